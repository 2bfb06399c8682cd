use std::path::{Path, PathBuf};

use rbs_core::drivetrain::{simulate, Simulation};
use serde::Serialize;

use super::{load_scenario, parse_override, to_json};
use crate::csvio;
use crate::error::{CliError, CliResult};

#[derive(clap::Args)]
pub struct Args {
    /// Scenario JSON file.
    scenario: PathBuf,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Integration step, s.
    #[arg(long)]
    dt: Option<f64>,
    /// Fixed end time, s.
    #[arg(long)]
    until: Option<f64>,
    /// Override a scenario field, e.g. `--set losses.viscous_coeff=0.002`.
    #[arg(long = "set", value_name = "PATH=VALUE")]
    overrides: Vec<String>,
}

#[derive(Serialize)]
struct Summary {
    inertia_kg_m2: f64,
    omega_peak_rad_s: f64,
    omega_final_rad_s: f64,
    free_spin_start_s: Option<f64>,
    free_spin_duration_s: Option<f64>,
    captured_energy_j: f64,
    released_energy_j: f64,
    dumped_energy_j: f64,
    ledger_residual_j: f64,
    steps: u64,
}

pub fn run(args: Args) -> CliResult<()> {
    let mut scenario = load_scenario(&args.scenario)?;
    if !args.overrides.is_empty() {
        let parsed = args
            .overrides
            .iter()
            .map(|o| parse_override(o))
            .collect::<CliResult<Vec<_>>>()?;
        scenario = scenario.with_overrides(parsed.iter().map(|(p, v)| (p.as_str(), v.clone())))?;
    }
    if let Some(dt) = args.dt {
        scenario.integrator.dt = dt;
    }
    if let Some(until) = args.until {
        scenario.integrator.t_end = Some(until);
    }
    scenario.validate()?;
    let sim = simulate(&scenario)?;

    std::fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    write_trajectory(&args.out.join("trajectory.csv"), &sim)?;
    write_phases(&args.out.join("phases.csv"), &sim)?;
    write_events(&args.out.join("events.csv"), &sim)?;
    let ledger_path = args.out.join("ledger.json");
    std::fs::write(&ledger_path, to_json(&sim.ledger)).map_err(|e| CliError::io(&ledger_path, e))?;

    let summary = Summary {
        inertia_kg_m2: sim.inertia,
        omega_peak_rad_s: sim.omega_peak,
        omega_final_rad_s: sim.omega_final,
        free_spin_start_s: sim.free_spin.map(|w| w.start),
        free_spin_duration_s: sim.free_spin_duration(),
        captured_energy_j: sim.captured_energy(),
        released_energy_j: sim.net_recovered_energy(),
        dumped_energy_j: sim.dumped_energy(),
        ledger_residual_j: sim.ledger.residual(),
        steps: sim.steps,
    };
    let summary_path = args.out.join("summary.json");
    std::fs::write(&summary_path, to_json(&summary)).map_err(|e| CliError::io(&summary_path, e))?;
    print!("{}", to_json(&summary));
    Ok(())
}

fn write_trajectory(path: &Path, sim: &Simulation) -> CliResult<()> {
    let mut w = csvio::create(path)?;
    let header = ["t_s", "omega_shaft_rad_s", "omega_flywheel_rad_s", "engaged", "phase"];
    csvio::write_row(&mut w, path, &header.map(String::from))?;
    for s in &sim.trajectory {
        let row = [
            s.t.to_string(),
            s.omega_shaft.to_string(),
            s.omega_flywheel.to_string(),
            u8::from(s.engaged).to_string(),
            s.phase.as_str().to_owned(),
        ];
        csvio::write_row(&mut w, path, &row)?;
    }
    csvio::finish(w, path)
}

fn write_phases(path: &Path, sim: &Simulation) -> CliResult<()> {
    let mut w = csvio::create(path)?;
    csvio::write_row(&mut w, path, &["phase", "t_start_s", "t_end_s"].map(String::from))?;
    for p in &sim.phases {
        csvio::write_row(
            &mut w,
            path,
            &[p.phase.as_str().to_owned(), p.t_start.to_string(), p.t_end.to_string()],
        )?;
    }
    csvio::finish(w, path)
}

fn write_events(path: &Path, sim: &Simulation) -> CliResult<()> {
    let mut w = csvio::create(path)?;
    csvio::write_row(&mut w, path, &["t_s", "energy_dumped_j", "destination"].map(String::from))?;
    for e in &sim.events {
        csvio::write_row(
            &mut w,
            path,
            &[e.t.to_string(), e.energy_dumped.to_string(), e.destination.as_str().to_owned()],
        )?;
    }
    csvio::finish(w, path)
}
