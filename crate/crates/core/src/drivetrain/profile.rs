//! Commanded speed of the clutch's driving shaft over time.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};
use crate::model::SpeedTrace;

/// Driving-shaft angular velocity (rad/s) as a function of time.
///
/// The braking mechanism is not modelled; only the speed it imposes on the
/// clutch input is. Before its first sample and after its last, a profile
/// holds its end values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShaftProfile {
    /// Piecewise-linear through measured or synthetic samples.
    Trace { samples: SpeedTrace },
    /// Spin at `omega_hold` until `t_brake`, then decelerate linearly to rest
    /// at `t_stop`.
    HoldThenBrake {
        omega_hold: f64,
        t_brake: f64,
        t_stop: f64,
    },
    /// At rest until `t_engage`, ramp up to `omega_hold` by `t_hold`, turn
    /// together until `t_release`, then fall to rest at `t_stop`.
    /// `t_hold == t_release` gives a spin-up with no synchronous interval.
    EngageHoldRelease {
        omega_hold: f64,
        t_engage: f64,
        t_hold: f64,
        t_release: f64,
        t_stop: f64,
    },
}

fn ramp(t: f64, t0: f64, y0: f64, t1: f64, y1: f64) -> f64 {
    if t <= t0 {
        y0
    } else if t >= t1 {
        y1
    } else {
        y0 + (y1 - y0) * (t - t0) / (t1 - t0)
    }
}

impl ShaftProfile {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(RbsError::Config(format!("shaft profile: {msg}")));
        match *self {
            ShaftProfile::Trace { .. } => Ok(()),
            ShaftProfile::HoldThenBrake {
                omega_hold,
                t_brake,
                t_stop,
            } => {
                if !(omega_hold.is_finite() && omega_hold >= 0.0) {
                    return bad(format!("omega_hold must be non-negative, got {omega_hold}"));
                }
                if !(t_brake.is_finite() && t_stop.is_finite() && t_brake >= 0.0 && t_stop > t_brake) {
                    return bad(format!("need 0 <= t_brake < t_stop, got {t_brake}, {t_stop}"));
                }
                Ok(())
            }
            ShaftProfile::EngageHoldRelease {
                omega_hold,
                t_engage,
                t_hold,
                t_release,
                t_stop,
            } => {
                if !(omega_hold.is_finite() && omega_hold >= 0.0) {
                    return bad(format!("omega_hold must be non-negative, got {omega_hold}"));
                }
                let times = [t_engage, t_hold, t_release, t_stop];
                if !times.iter().all(|t| t.is_finite())
                    || !(t_engage >= 0.0 && t_engage < t_hold && t_hold <= t_release && t_release < t_stop)
                {
                    return bad(format!(
                        "need 0 <= t_engage < t_hold <= t_release < t_stop, got {times:?}"
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn speed_at(&self, t: f64) -> f64 {
        match *self {
            ShaftProfile::Trace { ref samples } => samples.omega_at(t),
            ShaftProfile::HoldThenBrake {
                omega_hold,
                t_brake,
                t_stop,
            } => ramp(t, t_brake, omega_hold, t_stop, 0.0),
            ShaftProfile::EngageHoldRelease {
                omega_hold,
                t_engage,
                t_hold,
                t_release,
                t_stop,
            } => {
                if t <= t_hold {
                    ramp(t, t_engage, 0.0, t_hold, omega_hold)
                } else {
                    ramp(t, t_release, omega_hold, t_stop, 0.0)
                }
            }
        }
    }

    /// Time after which the profile no longer changes.
    pub fn end_time(&self) -> f64 {
        match *self {
            ShaftProfile::Trace { ref samples } => samples.end(),
            ShaftProfile::HoldThenBrake { t_stop, .. } => t_stop,
            ShaftProfile::EngageHoldRelease { t_stop, .. } => t_stop,
        }
    }
}
