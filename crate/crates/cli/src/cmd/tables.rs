use std::io::Write;
use std::path::{Path, PathBuf};

use rbs_core::analysis::{aggregate_cases, BenchCaseRow, CaseSummary};

use crate::csvio;
use crate::error::{CliError, CliResult};

const INPUT_HEADER: [&str; 5] = ["case_id", "omega_max_rpm", "braking_s", "free_spin_s", "energy_j"];
const OUTPUT_HEADER: [&str; 5] = ["case_id", "omega_max_rpm", "braking_s", "avg_free_spin_s", "avg_energy_j"];

#[derive(clap::Args)]
pub struct Args {
    /// Bench runs CSV, header `case_id,omega_max_rpm,braking_s,free_spin_s,energy_j`.
    table: PathBuf,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> CliResult<()> {
    let cols = csvio::read_columns(&args.table, &INPUT_HEADER)?;
    let mut rows = Vec::with_capacity(cols[0].len());
    for i in 0..cols[0].len() {
        let id = cols[0][i];
        if id.fract() != 0.0 || !(0.0..=u32::MAX as f64).contains(&id) {
            return Err(CliError::input(
                &args.table,
                format!("line {}: case_id {id} is not a non-negative integer", i + 2),
            ));
        }
        rows.push(BenchCaseRow {
            case_id: id as u32,
            omega_max_rpm: cols[1][i],
            braking_s: cols[2][i],
            free_spin_s: cols[3][i],
            energy_j: cols[4][i],
        });
    }
    let summaries = aggregate_cases(&rows).map_err(|e| CliError::input(&args.table, e.to_string()))?;
    match &args.out {
        Some(path) => write(csvio::create(path)?, path, &summaries),
        None => write(csvio::stdout(), Path::new("<stdout>"), &summaries),
    }
}

fn write<W: Write>(mut w: csv::Writer<W>, path: &Path, summaries: &[CaseSummary]) -> CliResult<()> {
    csvio::write_row(&mut w, path, &OUTPUT_HEADER.map(String::from))?;
    for s in summaries {
        let row = [
            s.case_id.to_string(),
            s.omega_max_rpm.to_string(),
            s.braking_s.to_string(),
            format!("{:.1}", s.avg_free_spin_s),
            format!("{:.0}", s.avg_energy_j),
        ];
        csvio::write_row(&mut w, path, &row)?;
    }
    csvio::finish(w, path)
}
