use std::path::PathBuf;

use rbs_core::analysis::{analyze_bench_trace, BenchAnalysis, Quadrature};
use rbs_core::model::{FlywheelSpec, SpeedTrace};
use serde::Serialize;

use super::{read_text, to_json};
use crate::csvio;
use crate::error::{CliError, CliResult};

const UNITS_NOTE: &str = "phase_integral_energy has units kg·m²·rad² and squared_speed_energy has units J·s; \
both keep the bench integral forms verbatim and are not energies. net_recovered_energy_j is ½I(ω_peak² − ω_end²).";

#[derive(Clone, Copy, clap::ValueEnum)]
enum Method {
    Simpson,
    Trapezoid,
}

#[derive(clap::Args)]
pub struct Args {
    /// Speed trace CSV, header `t_s,omega_rad_s` (or `t_s,omega_rpm` with --rpm).
    trace: PathBuf,
    /// Flywheel inertia, kg·m².
    #[arg(long, conflicts_with = "flywheel", required_unless_present = "flywheel")]
    inertia: Option<f64>,
    /// Flywheel geometry JSON, e.g. {"kind":"uniform_disk","mass":5,"radius":0.2}.
    #[arg(long)]
    flywheel: Option<PathBuf>,
    /// Degree of the least-squares polynomial.
    #[arg(long = "fit-degree", default_value_t = 2)]
    fit_degree: usize,
    /// Speeds in the trace are rpm.
    #[arg(long)]
    rpm: bool,
    #[arg(long, value_enum, default_value = "simpson")]
    quadrature: Method,
}

#[derive(Serialize)]
struct Report<'a> {
    inertia_kg_m2: f64,
    samples: usize,
    quadrature: &'a str,
    fit_degree: usize,
    fit_coefficients: &'a [f64],
    fit_residual_rms_rad_s: f64,
    plateau_start_s: f64,
    plateau_end_s: f64,
    phase_integrals_rad: [f64; 3],
    phase_integral_energy: f64,
    squared_speed_energy: f64,
    net_recovered_energy_j: f64,
    omega_peak_rad_s: f64,
    omega_end_rad_s: f64,
    units_note: &'a str,
}

pub fn run(args: Args) -> CliResult<()> {
    let inertia = match (&args.inertia, &args.flywheel) {
        (Some(i), _) => *i,
        (None, Some(path)) => {
            let spec: FlywheelSpec = serde_json::from_str(&read_text(path)?)
                .map_err(|e| CliError::input(path, e.to_string()))?;
            spec.inertia()?
        }
        (None, None) => return Err(CliError::Usage("one of --inertia or --flywheel is required".into())),
    };
    let header = if args.rpm {
        ["t_s", "omega_rpm"]
    } else {
        ["t_s", "omega_rad_s"]
    };
    let mut cols = csvio::read_columns(&args.trace, &header)?.into_iter();
    let (t, w) = (cols.next().unwrap(), cols.next().unwrap());
    let trace = if args.rpm {
        SpeedTrace::from_rpm(t, w)
    } else {
        SpeedTrace::new(t, w)
    }
    .map_err(|e| CliError::input(&args.trace, e.to_string()))?;

    let (method, name) = match args.quadrature {
        Method::Simpson => (Quadrature::Simpson, "simpson"),
        Method::Trapezoid => (Quadrature::Trapezoid, "trapezoid"),
    };
    let a: BenchAnalysis = analyze_bench_trace(&trace, inertia, args.fit_degree, method)?;
    eprintln!("note: {UNITS_NOTE}");
    print!(
        "{}",
        to_json(&Report {
            inertia_kg_m2: inertia,
            samples: trace.len(),
            quadrature: name,
            fit_degree: a.fit.degree,
            fit_coefficients: &a.fit.coefficients,
            fit_residual_rms_rad_s: a.fit.residual_rms,
            plateau_start_s: trace.times()[a.segments.plateau_start],
            plateau_end_s: trace.times()[a.segments.plateau_end],
            phase_integrals_rad: a.phase_integrals,
            phase_integral_energy: a.phase_integral_energy,
            squared_speed_energy: a.squared_speed_energy,
            net_recovered_energy_j: a.net_recovered_energy,
            omega_peak_rad_s: a.omega_peak,
            omega_end_rad_s: a.omega_end,
            units_note: UNITS_NOTE,
        })
    );
    Ok(())
}
