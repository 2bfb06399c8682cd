//! Bench-top scenarios, loss calibration and design sweeps.

pub mod bench;
pub mod calibrate;
pub mod scenario;
pub mod sweep;

pub use bench::bench_case;
pub use calibrate::{calibrate_losses, calibrate_losses_on, free_spin_duration, LossCoefficient};
pub use scenario::{IntegratorSettings, Scenario};
pub use sweep::{run_sweep, Objective, SweepAxis, SweepOptions, SweepRow, SweepSpec};
