//! Full description of one drivetrain simulation.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::drivetrain::{GearTrain, LossModel, ShaftProfile};
use crate::electrical::{Alternator, UltracapBank};
use crate::error::{RbsError, Result};
use crate::model::FlywheelSpec;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_EPS_SYNC: f64 = 1e-3;
pub const DEFAULT_OMEGA_STOP: f64 = 0.01;
pub const DEFAULT_MAX_TIME: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSettings {
    /// Fixed RK4 step, s.
    #[serde(default = "default_dt")]
    pub dt: f64,
    /// Keep every n-th step in the output trajectory.
    #[serde(default = "default_stride")]
    pub output_stride: usize,
    /// Fixed horizon. Without one the run ends once the flywheel has stopped
    /// and the shaft profile is over, or at `max_time`.
    #[serde(default)]
    pub t_end: Option<f64>,
    #[serde(default = "default_max_time")]
    pub max_time: f64,
}

fn default_dt() -> f64 {
    DEFAULT_DT
}
fn default_stride() -> usize {
    10
}
fn default_max_time() -> f64 {
    DEFAULT_MAX_TIME
}
fn default_eps_sync() -> f64 {
    DEFAULT_EPS_SYNC
}
fn default_omega_stop() -> f64 {
    DEFAULT_OMEGA_STOP
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            output_stride: default_stride(),
            t_end: None,
            max_time: DEFAULT_MAX_TIME,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub flywheel: FlywheelSpec,
    #[serde(default)]
    pub gear: GearTrain,
    #[serde(default)]
    pub losses: LossModel,
    #[serde(default)]
    pub alternator: Alternator,
    #[serde(default)]
    pub bank: UltracapBank,
    /// Charger cutoff in W; 0 accepts any trickle.
    #[serde(default)]
    pub trickle_min: f64,
    pub shaft_profile: ShaftProfile,
    #[serde(default)]
    pub integrator: IntegratorSettings,
    /// Engagement hysteresis, rad/s.
    #[serde(default = "default_eps_sync")]
    pub eps_sync: f64,
    /// Flywheel speed below which it counts as stopped, rad/s.
    #[serde(default = "default_omega_stop")]
    pub omega_stop_threshold: f64,
    #[serde(default)]
    pub initial_omega_flywheel: f64,
}

impl Scenario {
    /// Scenario with default components around a flywheel and profile.
    pub fn new(flywheel: FlywheelSpec, shaft_profile: ShaftProfile) -> Self {
        Self {
            flywheel,
            gear: GearTrain::default(),
            losses: LossModel::default(),
            alternator: Alternator::default(),
            bank: UltracapBank::default(),
            trickle_min: 0.0,
            shaft_profile,
            integrator: IntegratorSettings::default(),
            eps_sync: DEFAULT_EPS_SYNC,
            omega_stop_threshold: DEFAULT_OMEGA_STOP,
            initial_omega_flywheel: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |e: RbsError| match e {
            RbsError::Config(_) => e,
            other => RbsError::Config(other.to_string()),
        };
        self.flywheel.validate().map_err(cfg)?;
        self.gear.validate().map_err(cfg)?;
        self.losses.validate().map_err(cfg)?;
        self.alternator.validate().map_err(cfg)?;
        self.bank.validate()?;
        self.shaft_profile.validate()?;

        let ig = &self.integrator;
        if !(ig.dt.is_finite() && ig.dt > 0.0) {
            return Err(RbsError::Config(format!("dt must be positive, got {}", ig.dt)));
        }
        if ig.output_stride == 0 {
            return Err(RbsError::Config("output_stride must be at least 1".into()));
        }
        if let Some(t_end) = ig.t_end {
            if !(t_end.is_finite() && t_end > 0.0) {
                return Err(RbsError::Config(format!("t_end must be positive, got {t_end}")));
            }
        }
        if !(ig.max_time.is_finite() && ig.max_time > 0.0) {
            return Err(RbsError::Config(format!(
                "max_time must be positive, got {}",
                ig.max_time
            )));
        }
        let non_negative = [
            ("eps_sync", self.eps_sync),
            ("trickle_min", self.trickle_min),
            ("initial_omega_flywheel", self.initial_omega_flywheel),
        ];
        for (name, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(RbsError::Config(format!("{name} must be non-negative, got {v}")));
            }
        }
        if !(self.omega_stop_threshold.is_finite() && self.omega_stop_threshold > 0.0) {
            return Err(RbsError::Config(format!(
                "omega_stop_threshold must be positive, got {}",
                self.omega_stop_threshold
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| RbsError::Config(format!("scenario: {e}")))
    }

    /// Copy with the value at a dotted path (e.g. `losses.viscous_coeff`)
    /// replaced. The result must still deserialize as a scenario.
    pub fn with_override(&self, path: &str, value: Value) -> Result<Self> {
        self.with_overrides(std::iter::once((path, value)))
    }

    pub fn with_overrides<'a>(
        &self,
        overrides: impl IntoIterator<Item = (&'a str, Value)>,
    ) -> Result<Self> {
        let mut tree = serde_json::to_value(self).expect("scenario serializes");
        for (path, value) in overrides {
            set_path(&mut tree, path, value)?;
        }
        serde_json::from_value(tree).map_err(|e| RbsError::Config(format!("override: {e}")))
    }
}

fn set_path(tree: &mut Value, path: &str, value: Value) -> Result<()> {
    let mut node = tree;
    let mut keys = path.split('.').peekable();
    while let Some(key) = keys.next() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| RbsError::Config(format!("override path {path:?}: {key:?} is not inside an object")))?;
        let slot = obj
            .get_mut(key)
            .ok_or_else(|| RbsError::Config(format!("override path {path:?}: unknown field {key:?}")))?;
        if keys.peek().is_none() {
            *slot = value;
            return Ok(());
        }
        node = slot;
    }
    Err(RbsError::Config("empty override path".into()))
}
