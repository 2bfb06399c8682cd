//! Speed-trace analysis: quadrature, least-squares polynomial fits, the
//! bench-top energy evaluators and aggregation of repeated bench runs.

pub mod energy;
pub mod polyfit;
pub mod quadrature;
pub mod tables;

pub use energy::{
    analyze_bench_trace, literal_phase_integral_energy, literal_squared_speed_energy, net_recovered_energy,
    phase_integral_energy_from_integrals, segment_bench_trace, BenchAnalysis, BenchSegments,
};
pub use polyfit::{fit_polynomial, fit_samples, PolyFit, MAX_DEGREE};
pub use quadrature::{integrate, integrate_trace, Quadrature};
pub use tables::{aggregate_cases, round_half_up, BenchCaseRow, CaseSummary};
