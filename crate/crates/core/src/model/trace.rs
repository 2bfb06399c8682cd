//! Sampled angular-velocity traces.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};
use crate::model::units::rpm_to_rad_s;

/// Angular velocity (rad/s) sampled against time (s).
///
/// At least two samples, strictly increasing time, non-negative finite speed.
/// Sampling may be irregular.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct SpeedTrace {
    t: Vec<f64>,
    omega: Vec<f64>,
}

/// Checks the abscissa rules shared by every sampled series in the crate.
pub(crate) fn validate_abscissae(t: &[f64], what: &str) -> Result<()> {
    if t.len() < 2 {
        return Err(RbsError::InvalidInput(format!(
            "{what} needs at least 2 samples, got {}",
            t.len()
        )));
    }
    for (i, w) in t.windows(2).enumerate() {
        if !w[0].is_finite() || !w[1].is_finite() {
            return Err(RbsError::InvalidInput(format!(
                "{what} has a non-finite time at sample {}",
                i + 1
            )));
        }
        if w[1] <= w[0] {
            return Err(RbsError::InvalidInput(format!(
                "{what} time must be strictly increasing (sample {}: {} after {})",
                i + 2,
                w[1],
                w[0]
            )));
        }
    }
    Ok(())
}

pub(crate) fn validate_non_negative(values: &[f64], what: &str) -> Result<()> {
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() || *v < 0.0 {
            return Err(RbsError::InvalidInput(format!(
                "{what} must be finite and non-negative (sample {}: {v})",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Piecewise-linear interpolation, held constant beyond either end.
pub(crate) fn interpolate(t: &[f64], y: &[f64], at: f64) -> f64 {
    let n = t.len();
    if at <= t[0] {
        return y[0];
    }
    if at >= t[n - 1] {
        return y[n - 1];
    }
    // first index with t[i] > at
    let i = t.partition_point(|&x| x <= at);
    let (t0, t1) = (t[i - 1], t[i]);
    let (y0, y1) = (y[i - 1], y[i]);
    y0 + (y1 - y0) * (at - t0) / (t1 - t0)
}

impl SpeedTrace {
    pub fn new(t: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        if t.len() != omega.len() {
            return Err(RbsError::InvalidInput(format!(
                "speed trace has {} times but {} speeds",
                t.len(),
                omega.len()
            )));
        }
        validate_abscissae(&t, "speed trace")?;
        validate_non_negative(&omega, "angular velocity")?;
        Ok(Self { t, omega })
    }

    pub fn from_pairs(samples: &[(f64, f64)]) -> Result<Self> {
        let (t, omega) = samples.iter().copied().unzip();
        Self::new(t, omega)
    }

    /// Builds a trace from speeds given in rpm.
    pub fn from_rpm(t: Vec<f64>, rpm: Vec<f64>) -> Result<Self> {
        let omega = rpm.into_iter().map(rpm_to_rad_s).collect();
        Self::new(t, omega)
    }

    /// Samples `f` at `n` evenly spaced points over `[t0, t1]`.
    pub fn sample_fn(t0: f64, t1: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(RbsError::InvalidInput("need at least 2 samples".into()));
        }
        let t: Vec<f64> = (0..n)
            .map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64)
            .collect();
        let omega = t.iter().map(|&x| f(x)).collect();
        Self::new(t, omega)
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omega
    }

    pub fn start(&self) -> f64 {
        self.t[0]
    }

    pub fn end(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    pub fn first_omega(&self) -> f64 {
        self.omega[0]
    }

    pub fn last_omega(&self) -> f64 {
        self.omega[self.omega.len() - 1]
    }

    pub fn max_omega(&self) -> f64 {
        self.omega.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the first sample holding the maximum speed.
    pub fn argmax(&self) -> usize {
        let peak = self.max_omega();
        self.omega.iter().position(|&w| w == peak).unwrap_or(0)
    }

    pub fn omega_at(&self, t: f64) -> f64 {
        interpolate(&self.t, &self.omega, t)
    }

    /// Samples `from..=to` (inclusive indices) as a new trace.
    pub fn slice(&self, from: usize, to: usize) -> Result<Self> {
        if to >= self.len() || to <= from {
            return Err(RbsError::InvalidInput(format!(
                "trace slice {from}..={to} is empty or out of bounds"
            )));
        }
        Ok(Self {
            t: self.t[from..=to].to_vec(),
            omega: self.omega[from..=to].to_vec(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.t.iter().copied().zip(self.omega.iter().copied())
    }
}

impl TryFrom<Vec<(f64, f64)>> for SpeedTrace {
    type Error = RbsError;

    fn try_from(samples: Vec<(f64, f64)>) -> Result<Self> {
        Self::from_pairs(&samples)
    }
}

impl From<SpeedTrace> for Vec<(f64, f64)> {
    fn from(trace: SpeedTrace) -> Self {
        trace.t.into_iter().zip(trace.omega).collect()
    }
}
