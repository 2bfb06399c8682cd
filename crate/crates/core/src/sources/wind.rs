//! Wind power with the Betz coefficient and recoverable energy over a
//! recorded wind trace.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};
use crate::model::trace::{interpolate, validate_abscissae, validate_non_negative};

/// Largest possible Betz coefficient, 16/27.
pub const BETZ_LIMIT: f64 = 16.0 / 27.0;

/// Recovery efficiency used when none is measured.
pub const DEFAULT_ETA: f64 = 0.9;

fn default_eta() -> f64 {
    DEFAULT_ETA
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindSite {
    /// Air density, kg/m³.
    pub rho: f64,
    /// Rotor swept area, m².
    pub area: f64,
    /// Below this wind speed the turbine does not run, m/s.
    #[serde(default)]
    pub cut_in_velocity: f64,
    /// Fraction of captured power the RBS actually recovers, (0, 1].
    #[serde(default = "default_eta")]
    pub eta: f64,
}

impl WindSite {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(RbsError::InvalidInput(format!("air density must be positive, got {}", self.rho)));
        }
        if !(self.area.is_finite() && self.area > 0.0) {
            return Err(RbsError::InvalidInput(format!("swept area must be positive, got {}", self.area)));
        }
        if !(self.cut_in_velocity.is_finite() && self.cut_in_velocity >= 0.0) {
            return Err(RbsError::InvalidInput(format!(
                "cut-in velocity must be non-negative, got {}",
                self.cut_in_velocity
            )));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(RbsError::InvalidInput(format!("eta must be in (0, 1], got {}", self.eta)));
        }
        Ok(())
    }
}

/// Wind speed (m/s) sampled against time (s).
#[derive(Debug, Clone, PartialEq)]
pub struct WindTrace {
    t: Vec<f64>,
    v: Vec<f64>,
}

impl WindTrace {
    pub fn new(t: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if t.len() != v.len() {
            return Err(RbsError::InvalidInput(format!(
                "wind trace has {} times but {} speeds",
                t.len(),
                v.len()
            )));
        }
        validate_abscissae(&t, "wind trace")?;
        validate_non_negative(&v, "wind speed")?;
        Ok(Self { t, v })
    }

    pub fn start(&self) -> f64 {
        self.t[0]
    }

    pub fn end(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    pub fn speed_at(&self, t: f64) -> f64 {
        interpolate(&self.t, &self.v, t)
    }
}

/// Betz coefficient c_b = (1 + V_r)(1 − V_r²)/2 for the outlet/inlet
/// velocity ratio V_r.
pub fn betz_coefficient(v_ratio: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v_ratio) {
        return Err(RbsError::Domain(format!(
            "velocity ratio must lie in [0, 1], got {v_ratio}"
        )));
    }
    Ok((1.0 + v_ratio) * (1.0 - v_ratio * v_ratio) / 2.0)
}

/// Numerical maximum of the Betz coefficient over [0, 1] by golden-section
/// search. Returns `(v_ratio, c_b)`.
pub fn betz_optimum() -> (f64, f64) {
    let f = |x: f64| (1.0 + x) * (1.0 - x * x) / 2.0;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Captured wind power ½ρAv³c_b in watts. Expects v ≥ 0 and
/// 0 ≤ c_b ≤ 16/27.
pub fn wind_power(site: &WindSite, v: f64, c_b: f64) -> f64 {
    0.5 * site.rho * site.area * v * v * v * c_b
}

/// ∫v³ over one linear piece by Simpson's rule (exact for a cubic).
fn cube_integral(ta: f64, va: f64, tb: f64, vb: f64) -> f64 {
    let vm = 0.5 * (va + vb);
    (tb - ta) / 6.0 * (va.powi(3) + 4.0 * vm.powi(3) + vb.powi(3))
}

/// ∫v³ over a linear piece, counting only where v ≥ cut_in.
fn gated_cube_integral(ta: f64, va: f64, tb: f64, vb: f64, cut_in: f64) -> f64 {
    match (va >= cut_in, vb >= cut_in) {
        (true, true) => cube_integral(ta, va, tb, vb),
        (false, false) => 0.0,
        (above_a, _) => {
            let tc = ta + (cut_in - va) / (vb - va) * (tb - ta);
            if above_a {
                cube_integral(ta, va, tc, cut_in)
            } else {
                cube_integral(tc, cut_in, tb, vb)
            }
        }
    }
}

/// Recoverable energy in joules over `[t_a, t_b]`: ½·η·c_b·ρ·A·∫v³dt on the
/// piecewise-linear wind speed, with time below cut-in contributing nothing.
pub fn recoverable_wind_energy(
    site: &WindSite,
    trace: &WindTrace,
    interval: (f64, f64),
    c_b: f64,
) -> Result<f64> {
    site.validate()?;
    if !(0.0..=BETZ_LIMIT + 1e-12).contains(&c_b) {
        return Err(RbsError::Domain(format!(
            "Betz coefficient must lie in [0, 16/27], got {c_b}"
        )));
    }
    let (a, b) = interval;
    if !(a.is_finite() && b.is_finite()) || a > b || a < trace.start() || b > trace.end() {
        return Err(RbsError::Range(format!(
            "interval [{a}, {b}] is outside the trace span [{}, {}]",
            trace.start(),
            trace.end()
        )));
    }

    let mut knots = vec![(a, trace.speed_at(a))];
    knots.extend(
        trace
            .t
            .iter()
            .zip(&trace.v)
            .filter(|(&t, _)| t > a && t < b)
            .map(|(&t, &v)| (t, v)),
    );
    knots.push((b, trace.speed_at(b)));

    let cubed: f64 = knots
        .windows(2)
        .map(|w| gated_cube_integral(w[0].0, w[0].1, w[1].0, w[1].1, site.cut_in_velocity))
        .sum();
    Ok(0.5 * site.eta * c_b * site.rho * site.area * cubed)
}
