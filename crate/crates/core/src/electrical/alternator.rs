use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};

/// Alternator with a reaction torque proportional to speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Alternator {
    /// Mechanical to electrical conversion efficiency, (0, 1].
    pub efficiency: f64,
    /// Reaction torque per unit speed, N·m·s/rad.
    pub load_coeff: f64,
}

impl Default for Alternator {
    fn default() -> Self {
        Self {
            efficiency: 0.8,
            load_coeff: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatorOutput {
    pub electrical_energy: f64,
    pub reaction_torque: f64,
    /// Mechanical input not converted to electricity.
    pub loss: f64,
}

impl Alternator {
    pub fn validate(&self) -> Result<()> {
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(RbsError::InvalidSpec(format!(
                "alternator efficiency must be in (0, 1], got {}",
                self.efficiency
            )));
        }
        if !(self.load_coeff.is_finite() && self.load_coeff >= 0.0) {
            return Err(RbsError::InvalidSpec(format!(
                "alternator load coefficient must be non-negative, got {}",
                self.load_coeff
            )));
        }
        Ok(())
    }

    pub fn reaction_torque(&self, omega: f64) -> f64 {
        self.load_coeff * omega
    }

    /// Mechanical power absorbed from the flywheel at `omega`.
    pub fn shaft_power(&self, omega: f64) -> f64 {
        self.load_coeff * omega * omega
    }

    /// Splits absorbed mechanical energy into (electrical, loss).
    pub fn convert(&self, mechanical: f64) -> (f64, f64) {
        let electrical = self.efficiency * mechanical;
        (electrical, mechanical - electrical)
    }
}

/// Energy generated over `dt` at constant speed `omega`.
pub fn alternator_step(alt: &Alternator, omega: f64, dt: f64) -> Result<AlternatorOutput> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(RbsError::InvalidInput(format!(
            "alternator speed must be non-negative, got {omega}"
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(RbsError::InvalidStep(format!("dt must be positive, got {dt}")));
    }
    let reaction_torque = alt.reaction_torque(omega);
    let (electrical_energy, loss) = alt.convert(reaction_torque * omega * dt);
    Ok(AlternatorOutput {
        electrical_energy,
        reaction_torque,
        loss,
    })
}
