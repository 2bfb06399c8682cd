//! Alternator load on the flywheel, trickle charge controller and
//! ultracapacitor buffer that dumps into the principal store.

pub mod alternator;
pub mod ultracap;

pub use alternator::{alternator_step, Alternator, AlternatorOutput};
pub use ultracap::{charge_step, ChargeEvent, ChargeOutcome, Destination, UltracapBank};
