use std::path::PathBuf;

use rbs_core::experiments::{calibrate_losses_on, free_spin_duration, LossCoefficient};
use serde::Serialize;

use super::{load_scenario, to_json};
use crate::error::CliResult;

#[derive(Clone, Copy, clap::ValueEnum)]
enum Coefficient {
    Coulomb,
    Viscous,
    Aero,
}

#[derive(clap::Args)]
pub struct Args {
    /// Scenario JSON whose loss model is tuned.
    scenario: PathBuf,
    /// Measured free-spin duration, s.
    #[arg(long)]
    target: f64,
    #[arg(long, value_enum, default_value = "viscous")]
    coefficient: Coefficient,
    /// Lower end of the search bracket.
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    /// Upper end of the search bracket.
    #[arg(long, default_value_t = 1.0)]
    hi: f64,
}

#[derive(Serialize)]
struct Report {
    target_s: f64,
    achieved_s: Option<f64>,
    losses: rbs_core::drivetrain::LossModel,
}

pub fn run(args: Args) -> CliResult<()> {
    let mut scenario = load_scenario(&args.scenario)?;
    scenario.validate()?;
    let which = match args.coefficient {
        Coefficient::Coulomb => LossCoefficient::Coulomb,
        Coefficient::Viscous => LossCoefficient::Viscous,
        Coefficient::Aero => LossCoefficient::Aero,
    };
    let losses = calibrate_losses_on(args.target, &scenario, (args.lo, args.hi), which)?;
    scenario.losses = losses;
    let achieved_s = free_spin_duration(&scenario)?;
    print!(
        "{}",
        to_json(&Report {
            target_s: args.target,
            achieved_s,
            losses,
        })
    );
    Ok(())
}
