use std::path::PathBuf;

use rbs_core::experiments::bench_case;

use crate::error::CliResult;

#[derive(clap::Args)]
pub struct Args {
    /// Bench case id (1, 2 or 3).
    #[arg(long)]
    case: u32,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> CliResult<()> {
    let scenario = bench_case(args.case)?;
    let mut text = scenario.to_json();
    text.push('\n');
    crate::write_text(args.out.as_ref(), &text)
}
