//! `rbs`: simulate flywheel regenerative braking, evaluate wind and drive
//! cycle sources, and analyze bench-top speed traces.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cmd;
mod csvio;
mod error;

use error::CliResult;

#[derive(Parser)]
#[command(name = "rbs", version, about = "Flywheel regenerative braking toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write trajectory, ledger, phase and event files.
    Simulate(cmd::simulate::Args),
    /// Recoverable wind energy from a wind-speed trace.
    Wind(cmd::wind::Args),
    /// Fit a speed trace and evaluate the bench energy formulas.
    Analyze(cmd::analyze::Args),
    /// Average repeated bench runs per case.
    Tables(cmd::tables::Args),
    /// Full-factorial parameter sweep over a base scenario.
    Sweep(cmd::sweep::Args),
    /// Braking energy available over a vehicle drive cycle.
    Cycle(cmd::cycle::Args),
    /// Fit one loss coefficient to a measured free-spin duration.
    Calibrate(cmd::calibrate::Args),
    /// Print the scenario for a bench-top test case.
    Scenario(cmd::scenario::Args),
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate(a) => cmd::simulate::run(a),
        Command::Wind(a) => cmd::wind::run(a),
        Command::Analyze(a) => cmd::analyze::run(a),
        Command::Tables(a) => cmd::tables::run(a),
        Command::Sweep(a) => cmd::sweep::run(a),
        Command::Cycle(a) => cmd::cycle::run(a),
        Command::Calibrate(a) => cmd::calibrate::run(a),
        Command::Scenario(a) => cmd::scenario::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Shared helper for commands that take an optional output file.
pub(crate) fn write_text(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| error::CliError::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
