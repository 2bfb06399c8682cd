use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};

/// Speed-boost gear train between the clutch and the flywheel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GearTrain {
    /// Flywheel speed over shaft speed while engaged.
    pub ratio: f64,
}

impl Default for GearTrain {
    fn default() -> Self {
        Self { ratio: 4.0 }
    }
}

impl GearTrain {
    pub fn new(ratio: f64) -> Result<Self> {
        let gear = Self { ratio };
        gear.validate()?;
        Ok(gear)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ratio.is_finite() && self.ratio > 0.0 {
            Ok(())
        } else {
            Err(RbsError::InvalidSpec(format!(
                "gear ratio must be positive, got {}",
                self.ratio
            )))
        }
    }
}

/// Overrunning clutch rule: the shaft drives the flywheel while the geared
/// shaft speed keeps up with the flywheel (within `eps`).
pub fn clutch_engaged(omega_shaft: f64, omega_flywheel: f64, gear: &GearTrain, eps: f64) -> bool {
    gear.ratio * omega_shaft >= omega_flywheel - eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::units::rpm_to_rad_s;

    #[test]
    fn engagement_examples() {
        let gear = GearTrain::new(4.0).unwrap();
        assert!(clutch_engaged(
            rpm_to_rad_s(100.0),
            rpm_to_rad_s(350.0),
            &gear,
            1e-3
        ));
        assert!(!clutch_engaged(0.0, 5.0, &gear, 1e-3));
        assert!(clutch_engaged(100.0, 400.0, &gear, 0.0));
        assert!(!clutch_engaged(100.0, 400.1, &gear, 0.0));
        assert!(GearTrain::new(0.0).is_err());
    }
}
