//! Regenerative energy sources: wind and vehicle coasting/braking.

pub mod vehicle;
pub mod wind;

pub use vehicle::{
    regen_energy_over_cycle, vehicle_kinetic_energy, vehicle_potential_delta, CycleLedger, DriveCycle,
    VehicleSpec,
};
pub use wind::{
    betz_coefficient, betz_optimum, recoverable_wind_energy, wind_power, WindSite, WindTrace, BETZ_LIMIT,
};
