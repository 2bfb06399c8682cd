//! Vehicle coasting/braking energy balance over a drive cycle.
//!
//! The power available for recovery at each instant is what the vehicle
//! gives up in kinetic and potential energy minus aerodynamic drag and tyre
//! rolling resistance:
//!
//! ```text
//! P_avail = −d/dt[KE + PE] − ½ρ·CdA·v³ − Crr·M·g·v
//! ```
//!
//! Only `max(0, P_avail)` is recoverable, scaled by η. Speed and elevation
//! are piecewise linear between samples, so P_avail is a cubic in time on
//! each segment and is integrated exactly.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};
use crate::model::trace::{validate_abscissae, validate_non_negative};

pub const STANDARD_GRAVITY: f64 = 9.81;

fn default_g() -> f64 {
    STANDARD_GRAVITY
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleSpec {
    /// Mass including payload, kg.
    pub mass: f64,
    #[serde(default = "default_g")]
    pub g: f64,
    /// Drag coefficient times frontal area, m².
    #[serde(default)]
    pub drag_area: f64,
    #[serde(default)]
    pub air_density: f64,
    #[serde(default)]
    pub rolling_coeff: f64,
}

impl VehicleSpec {
    pub fn new(mass: f64) -> Self {
        Self {
            mass,
            g: STANDARD_GRAVITY,
            drag_area: 0.0,
            air_density: 0.0,
            rolling_coeff: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(RbsError::InvalidInput(format!("vehicle mass must be positive, got {}", self.mass)));
        }
        for (name, v) in [
            ("g", self.g),
            ("drag_area", self.drag_area),
            ("air_density", self.air_density),
            ("rolling_coeff", self.rolling_coeff),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(RbsError::InvalidInput(format!("{name} must be non-negative, got {v}")));
            }
        }
        Ok(())
    }

    fn aero_factor(&self) -> f64 {
        0.5 * self.air_density * self.drag_area
    }

    fn tire_factor(&self) -> f64 {
        self.rolling_coeff * self.mass * self.g
    }
}

/// Speed (m/s) and elevation (m) against time (s).
#[derive(Debug, Clone, PartialEq)]
pub struct DriveCycle {
    t: Vec<f64>,
    v: Vec<f64>,
    elevation: Vec<f64>,
}

impl DriveCycle {
    pub fn new(t: Vec<f64>, v: Vec<f64>, elevation: Vec<f64>) -> Result<Self> {
        if t.len() != v.len() || t.len() != elevation.len() {
            return Err(RbsError::InvalidInput("drive cycle columns differ in length".into()));
        }
        validate_abscissae(&t, "drive cycle")?;
        validate_non_negative(&v, "vehicle speed")?;
        if elevation.iter().any(|y| !y.is_finite()) {
            return Err(RbsError::InvalidInput("drive cycle elevation must be finite".into()));
        }
        Ok(Self { t, v, elevation })
    }

    /// Flat-road cycle.
    pub fn flat(t: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        let elevation = vec![0.0; t.len()];
        Self::new(t, v, elevation)
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

    pub fn speeds(&self) -> &[f64] {
        &self.v
    }

    pub fn elevations(&self) -> &[f64] {
        &self.elevation
    }

    /// Reversed traversal: same path driven backwards in time.
    pub fn reversed(&self) -> Self {
        let t_end = self.t[self.t.len() - 1];
        Self {
            t: self.t.iter().rev().map(|t| t_end - t).collect(),
            v: self.v.iter().rev().copied().collect(),
            elevation: self.elevation.iter().rev().copied().collect(),
        }
    }
}

/// Kinetic energy ½Mv².
pub fn vehicle_kinetic_energy(spec: &VehicleSpec, v: f64) -> f64 {
    0.5 * spec.mass * v * v
}

/// Energy released by descending `drop` metres, M·g·Δy; a climb (negative
/// drop) gives a negative value.
pub fn vehicle_potential_delta(spec: &VehicleSpec, drop: f64) -> f64 {
    spec.mass * spec.g * drop
}

/// Energy account of one drive cycle, joules.
///
/// `gross_delta_ke + gross_delta_pe + aero_loss + tire_loss
///  = traction_work − braking_available`
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CycleLedger {
    /// KE(end) − KE(start).
    pub gross_delta_ke: f64,
    /// PE(end) − PE(start), PE = M·g·elevation.
    pub gross_delta_pe: f64,
    pub aero_loss: f64,
    pub tire_loss: f64,
    /// ∫max(0, P_avail) dt.
    pub braking_available: f64,
    /// ∫max(0, −P_avail) dt, supplied by the powertrain.
    pub traction_work: f64,
    /// (1 − η) of the available braking energy.
    pub conversion_loss: f64,
    /// η of the available braking energy.
    pub net_recoverable: f64,
}

impl CycleLedger {
    /// gross ΔKE minus its reconstruction from the other terms.
    pub fn decomposition_residual(&self) -> f64 {
        let rebuilt = self.traction_work
            - self.braking_available
            - self.gross_delta_pe
            - self.aero_loss
            - self.tire_loss;
        self.gross_delta_ke - rebuilt
    }
}

/// Cubic c0 + c1τ + c2τ² + c3τ³.
#[derive(Debug, Clone, Copy)]
struct Cubic([f64; 4]);

impl Cubic {
    fn eval(&self, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.0;
        ((c3 * x + c2) * x + c1) * x + c0
    }

    fn antiderivative(&self, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.0;
        (((c3 / 4.0 * x + c2 / 3.0) * x + c1 / 2.0) * x + c0) * x
    }

    /// Real roots of the derivative inside (0, h), ascending.
    fn critical_points(&self, h: f64) -> Vec<f64> {
        let [_, c1, c2, c3] = self.0;
        let (a, b, c) = (3.0 * c3, 2.0 * c2, c1);
        let mut roots = Vec::new();
        if a == 0.0 {
            if b != 0.0 {
                roots.push(-c / b);
            }
        } else {
            let disc = b * b - 4.0 * a * c;
            if disc >= 0.0 {
                let q = -0.5 * (b + b.signum() * disc.sqrt());
                if q != 0.0 {
                    roots.push(q / a);
                    roots.push(c / q);
                } else {
                    roots.push(0.0);
                }
            }
        }
        roots.retain(|r| r.is_finite() && *r > 0.0 && *r < h);
        roots.sort_by(f64::total_cmp);
        roots
    }

    fn bisect_root(&self, mut lo: f64, mut hi: f64) -> f64 {
        let lo_positive = self.eval(lo) > 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if (self.eval(mid) > 0.0) == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// ∫₀ʰ max(0, p(τ)) dτ, exact up to root location.
    fn positive_part_integral(&self, h: f64) -> f64 {
        let mut breaks = vec![0.0];
        breaks.extend(self.critical_points(h));
        breaks.push(h);
        let mut knots = vec![0.0];
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (pa, pb) = (self.eval(a), self.eval(b));
            if (pa > 0.0 && pb < 0.0) || (pa < 0.0 && pb > 0.0) {
                knots.push(self.bisect_root(a, b));
            }
            knots.push(b);
        }
        knots
            .windows(2)
            .filter(|w| w[1] > w[0] && self.eval(0.5 * (w[0] + w[1])) > 0.0)
            .map(|w| self.antiderivative(w[1]) - self.antiderivative(w[0]))
            .sum()
    }
}

/// Integrates the braking power balance over a drive cycle.
pub fn regen_energy_over_cycle(spec: &VehicleSpec, cycle: &DriveCycle, eta: f64) -> Result<CycleLedger> {
    spec.validate()?;
    if cycle.len() < 2 {
        return Err(RbsError::InvalidInput("drive cycle needs at least 2 samples".into()));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(RbsError::InvalidInput(format!("eta must be in (0, 1], got {eta}")));
    }
    let m = spec.mass;
    let ka = spec.aero_factor();
    let kt = spec.tire_factor();

    let mut ledger = CycleLedger::default();
    for i in 0..cycle.len() - 1 {
        let h = cycle.t[i + 1] - cycle.t[i];
        let (v0, v1) = (cycle.v[i], cycle.v[i + 1]);
        let a = (v1 - v0) / h;
        let climb_rate = (cycle.elevation[i + 1] - cycle.elevation[i]) / h;

        let power = Cubic([
            -m * a * v0 - m * spec.g * climb_rate - ka * v0.powi(3) - kt * v0,
            -m * a * a - 3.0 * ka * v0 * v0 * a - kt * a,
            -3.0 * ka * v0 * a * a,
            -ka * a.powi(3),
        ]);
        let net = power.antiderivative(h);
        let available = power.positive_part_integral(h);

        ledger.aero_loss += ka * h * (v0.powi(3) + v0 * v0 * v1 + v0 * v1 * v1 + v1.powi(3)) / 4.0;
        ledger.tire_loss += kt * h * (v0 + v1) / 2.0;
        ledger.braking_available += available;
        ledger.traction_work += available - net;
    }
    let n = cycle.len() - 1;
    ledger.gross_delta_ke = vehicle_kinetic_energy(spec, cycle.v[n]) - vehicle_kinetic_energy(spec, cycle.v[0]);
    ledger.gross_delta_pe = m * spec.g * (cycle.elevation[n] - cycle.elevation[0]);
    ledger.net_recoverable = eta * ledger.braking_available;
    ledger.conversion_loss = ledger.braking_available - ledger.net_recoverable;
    Ok(ledger)
}
