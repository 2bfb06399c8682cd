use std::path::PathBuf;

use rbs_core::sources::{betz_coefficient, recoverable_wind_energy, WindSite, WindTrace, BETZ_LIMIT};
use serde::Serialize;

use super::to_json;
use crate::csvio;
use crate::error::{CliError, CliResult};

#[derive(clap::Args)]
pub struct Args {
    /// Wind trace CSV with header `t_s,v_mps`.
    trace: PathBuf,
    /// Air density, kg/m³.
    #[arg(long, default_value_t = 1.225)]
    rho: f64,
    /// Swept area, m².
    #[arg(long)]
    area: f64,
    /// Cut-in wind speed, m/s.
    #[arg(long = "cut-in", default_value_t = 0.0)]
    cut_in: f64,
    /// Recovery efficiency.
    #[arg(long, default_value_t = rbs_core::sources::wind::DEFAULT_ETA)]
    eta: f64,
    /// Betz coefficient; defaults to the 16/27 limit.
    #[arg(long, conflicts_with = "v_ratio")]
    cb: Option<f64>,
    /// Downstream/upstream velocity ratio, from which c_b is computed.
    #[arg(long = "v-ratio")]
    v_ratio: Option<f64>,
    /// Extra reporting interval `START END`, s. Repeatable.
    #[arg(long, num_args = 2, value_names = ["START", "END"], action = clap::ArgAction::Append)]
    interval: Vec<f64>,
}

#[derive(Serialize)]
struct IntervalEnergy {
    start_s: f64,
    end_s: f64,
    energy_j: f64,
}

#[derive(Serialize)]
struct Report {
    eta: f64,
    c_b: f64,
    rho: f64,
    area_m2: f64,
    cut_in_mps: f64,
    total_j: f64,
    intervals: Vec<IntervalEnergy>,
}

pub fn run(args: Args) -> CliResult<()> {
    let cols = csvio::read_columns(&args.trace, &["t_s", "v_mps"])?;
    let mut cols = cols.into_iter();
    let (t, v) = (cols.next().unwrap(), cols.next().unwrap());
    let trace = WindTrace::new(t, v).map_err(|e| CliError::input(&args.trace, e.to_string()))?;

    let c_b = match (args.cb, args.v_ratio) {
        (Some(cb), _) => cb,
        (None, Some(r)) => betz_coefficient(r)?,
        (None, None) => BETZ_LIMIT,
    };
    let site = WindSite {
        rho: args.rho,
        area: args.area,
        cut_in_velocity: args.cut_in,
        eta: args.eta,
    };
    let total_j = recoverable_wind_energy(&site, &trace, (trace.start(), trace.end()), c_b)?;
    let intervals = args
        .interval
        .chunks(2)
        .map(|pair| {
            let energy_j = recoverable_wind_energy(&site, &trace, (pair[0], pair[1]), c_b)?;
            Ok(IntervalEnergy {
                start_s: pair[0],
                end_s: pair[1],
                energy_j,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    print!(
        "{}",
        to_json(&Report {
            eta: site.eta,
            c_b,
            rho: site.rho,
            area_m2: site.area,
            cut_in_mps: site.cut_in_velocity,
            total_j,
            intervals,
        })
    );
    Ok(())
}
