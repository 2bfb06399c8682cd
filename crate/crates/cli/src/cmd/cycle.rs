use std::path::PathBuf;

use rbs_core::sources::{regen_energy_over_cycle, DriveCycle, VehicleSpec};

use super::to_json;
use crate::csvio;
use crate::error::{CliError, CliResult};

#[derive(clap::Args)]
pub struct Args {
    /// Drive cycle CSV, header `t_s,v_mps` or `t_s,v_mps,elev_m`.
    cycle: PathBuf,
    /// Vehicle mass, kg.
    #[arg(long)]
    mass: f64,
    /// Drag coefficient times frontal area, m².
    #[arg(long = "drag-area", default_value_t = 0.0)]
    drag_area: f64,
    /// Air density, kg/m³.
    #[arg(long = "air-density", default_value_t = 1.225)]
    air_density: f64,
    /// Rolling resistance coefficient.
    #[arg(long, default_value_t = 0.0)]
    rolling: f64,
    #[arg(long, default_value_t = rbs_core::sources::vehicle::STANDARD_GRAVITY)]
    g: f64,
    /// Conversion efficiency of the recovery chain.
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
}

pub fn run(args: Args) -> CliResult<()> {
    let (layout, cols) = csvio::read_either(&args.cycle, &["t_s", "v_mps", "elev_m"], &["t_s", "v_mps"])?;
    let mut cols = cols.into_iter();
    let (t, v) = (cols.next().unwrap(), cols.next().unwrap());
    let cycle = if layout == 1 {
        DriveCycle::flat(t, v)
    } else {
        DriveCycle::new(t, v, cols.next().unwrap())
    }
    .map_err(|e| CliError::input(&args.cycle, e.to_string()))?;
    let spec = VehicleSpec {
        mass: args.mass,
        g: args.g,
        drag_area: args.drag_area,
        air_density: args.air_density,
        rolling_coeff: args.rolling,
    };
    let ledger = regen_energy_over_cycle(&spec, &cycle, args.eta)?;
    print!("{}", to_json(&ledger));
    Ok(())
}
