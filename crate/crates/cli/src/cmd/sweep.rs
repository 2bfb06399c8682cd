use std::io::Write;
use std::path::{Path, PathBuf};

use rbs_core::experiments::{run_sweep, SweepOptions, SweepRow, SweepSpec};
use rbs_core::experiments::sweep::DEFAULT_SWEEP_CAP;

use super::{load_scenario, read_text};
use crate::csvio;
use crate::error::{CliError, CliResult};

/// Caps worker threads; unset means sequential.
pub const THREADS_ENV: &str = "RBS_SIM_THREADS";

#[derive(clap::Args)]
pub struct Args {
    /// Base scenario JSON.
    scenario: PathBuf,
    /// Sweep JSON: {"axes":[{"path":"gear.ratio","values":[2,4,8]}],"objective":"net_recovered"}.
    sweep: PathBuf,
    /// Results CSV; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse grids with more cells than this.
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
    cap: usize,
}

fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))),
        },
        Err(_) => Ok(1),
    }
}

pub fn run(args: Args) -> CliResult<()> {
    let base = load_scenario(&args.scenario)?;
    let spec: SweepSpec = serde_json::from_str(&read_text(&args.sweep)?)
        .map_err(|e| CliError::input(&args.sweep, e.to_string()))?;
    let options = SweepOptions {
        cap: args.cap,
        threads: threads_from_env()?,
    };
    let rows = run_sweep(&spec, &base, options)?;
    match &args.out {
        Some(path) => write(csvio::create(path)?, path, &spec, &rows),
        None => write(csvio::stdout(), Path::new("<stdout>"), &spec, &rows),
    }
}

fn write<W: Write>(mut w: csv::Writer<W>, path: &Path, spec: &SweepSpec, rows: &[SweepRow]) -> CliResult<()> {
    let mut header = vec!["rank".to_owned(), "cell".to_owned()];
    header.extend(spec.axes.iter().map(|a| a.path.clone()));
    header.push(spec.objective.as_str().to_owned());
    csvio::write_row(&mut w, path, &header)?;
    for (rank, row) in rows.iter().enumerate() {
        let mut record = vec![(rank + 1).to_string(), row.cell.to_string()];
        record.extend(row.values.iter().map(f64::to_string));
        record.push(row.objective.to_string());
        csvio::write_row(&mut w, path, &record)?;
    }
    csvio::finish(w, path)
}
