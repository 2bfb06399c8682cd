//! Shared quantities: unit conversions, sampled traces, flywheel geometry,
//! drivetrain phases and the energy ledger.

pub mod flywheel;
pub mod ledger;
pub mod phase;
pub mod trace;
pub mod units;

pub use flywheel::{inertia, kinetic_energy, required_torque, FlywheelSpec};
pub use ledger::EnergyLedger;
pub use phase::Phase;
pub use trace::SpeedTrace;
pub use units::{rad_s_to_rpm, rpm_to_rad_s};
