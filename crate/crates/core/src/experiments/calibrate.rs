//! Fit one loss coefficient to an observed free-spin duration.

use serde::{Deserialize, Serialize};

use crate::drivetrain::{simulate, LossModel};
use crate::error::{RbsError, Result};

use super::scenario::Scenario;

/// Which coefficient of the [`LossModel`] the calibration adjusts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossCoefficient {
    Coulomb,
    #[default]
    Viscous,
    Aero,
}

impl LossCoefficient {
    fn set(self, model: &mut LossModel, value: f64) {
        match self {
            LossCoefficient::Coulomb => model.coulomb_torque = value,
            LossCoefficient::Viscous => model.viscous_coeff = value,
            LossCoefficient::Aero => model.aero_coeff = value,
        }
    }
}

/// Simulated free-spin duration (disengagement to stop threshold), or
/// `None` if the flywheel never stops within the horizon.
pub fn free_spin_duration(scenario: &Scenario) -> Result<Option<f64>> {
    Ok(simulate(scenario)?.free_spin_duration())
}

const MAX_BISECTIONS: usize = 200;
const RELATIVE_WIDTH: f64 = 1e-12;
/// Accepted mismatch between target and calibrated duration, s.
pub const DURATION_TOLERANCE: f64 = 0.1;

/// Bisects the viscous coefficient within `bracket` until the simulated
/// free-spin duration matches `target` seconds.
pub fn calibrate_losses(target: f64, scenario: &Scenario, bracket: (f64, f64)) -> Result<LossModel> {
    calibrate_losses_on(target, scenario, bracket, LossCoefficient::Viscous)
}

/// As [`calibrate_losses`], adjusting `coefficient` with the others fixed.
///
/// Free-spin duration must decrease monotonically with the coefficient over
/// the bracket.
pub fn calibrate_losses_on(
    target: f64,
    scenario: &Scenario,
    bracket: (f64, f64),
    coefficient: LossCoefficient,
) -> Result<LossModel> {
    if !(target.is_finite() && target > 0.0) {
        return Err(RbsError::InvalidInput(format!(
            "target free-spin duration must be positive, got {target}"
        )));
    }
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi > lo) {
        return Err(RbsError::InvalidInput(format!(
            "calibration bracket must satisfy 0 <= lo < hi, got [{lo}, {hi}]"
        )));
    }

    let duration = |c: f64| -> Result<f64> {
        let mut trial = scenario.clone();
        coefficient.set(&mut trial.losses, c);
        Ok(free_spin_duration(&trial)?.unwrap_or(f64::INFINITY))
    };

    let (d_lo, d_hi) = (duration(lo)?, duration(hi)?);
    let failure = |d_lo: f64, d_hi: f64| RbsError::Calibration {
        target,
        lo: bracket.0,
        hi: bracket.1,
        duration_lo: d_lo,
        duration_hi: d_hi,
    };
    if !(d_lo >= target && target >= d_hi) {
        return Err(failure(d_lo, d_hi));
    }

    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= RELATIVE_WIDTH * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if duration(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let value = 0.5 * (lo + hi);
    let achieved = duration(value)?;
    if (achieved - target).abs() > DURATION_TOLERANCE {
        return Err(failure(d_lo, d_hi));
    }
    let mut model = scenario.losses;
    coefficient.set(&mut model, value);
    Ok(model)
}
