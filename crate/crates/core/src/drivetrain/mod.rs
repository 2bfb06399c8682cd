//! Shaft → overrunning clutch → gear train → flywheel/alternator dynamics.
//!
//! While the clutch is engaged the flywheel is kinematically slaved to the
//! geared shaft speed and the shaft supplies whatever work that requires.
//! Once the clutch overruns, the flywheel coasts against its loss and
//! alternator torques, integrated with fixed-step RK4.

pub mod clutch;
pub mod losses;
pub mod phase;
pub mod profile;
pub mod rk4;
pub mod sim;

pub use clutch::{clutch_engaged, GearTrain};
pub use losses::{loss_torque, LossModel};
pub use phase::{phase_of, PhaseContext};
pub use profile::ShaftProfile;
pub use sim::{simulate, Drivetrain, FreeSpinWindow, PhaseInterval, RbsState, Simulation, StepOutput};
