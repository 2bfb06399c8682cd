use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};

/// Resistive torque on the coasting flywheel: Coulomb + viscous + windage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossModel {
    /// N·m
    pub coulomb_torque: f64,
    /// N·m·s/rad
    pub viscous_coeff: f64,
    /// N·m·s²/rad²
    pub aero_coeff: f64,
}

impl LossModel {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("coulomb_torque", self.coulomb_torque),
            ("viscous_coeff", self.viscous_coeff),
            ("aero_coeff", self.aero_coeff),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(RbsError::InvalidSpec(format!(
                    "loss coefficient {name} must be non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_lossless(&self) -> bool {
        self.coulomb_torque == 0.0 && self.viscous_coeff == 0.0 && self.aero_coeff == 0.0
    }

    /// Bearing torque (Coulomb + viscous).
    pub fn friction_torque(&self, omega: f64) -> f64 {
        if omega > 0.0 {
            self.coulomb_torque + self.viscous_coeff * omega
        } else {
            0.0
        }
    }

    pub fn aero_torque(&self, omega: f64) -> f64 {
        if omega > 0.0 {
            self.aero_coeff * omega * omega
        } else {
            0.0
        }
    }

    pub fn torque(&self, omega: f64) -> f64 {
        self.friction_torque(omega) + self.aero_torque(omega)
    }
}

/// Total loss torque opposing rotation at `omega` (zero at rest).
pub fn loss_torque(model: &LossModel, omega: f64) -> f64 {
    model.torque(omega)
}
