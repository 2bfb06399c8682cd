//! Flywheel regenerative braking system (RBS) toolkit.
//!
//! The crate models the chain rotary source → overrunning clutch → speed-boost
//! gear train → flywheel/alternator → trickle charger and ultracapacitor bank,
//! and ships the numerical tools used to account for the recovered energy:
//! quadrature over irregular samples, polynomial trace fitting, wind and
//! vehicle source models, calibration and design sweeps.
//!
//! All quantities are SI internally. rpm and inches only appear through the
//! explicit conversions in [`model::units`].

pub mod analysis;
pub mod drivetrain;
pub mod electrical;
pub mod error;
pub mod experiments;
pub mod model;
pub mod sources;

pub use error::{RbsError, Result};
