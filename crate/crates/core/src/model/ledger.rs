//! Energy bookkeeping for a simulation run.

use serde::{Deserialize, Serialize};

/// Energy accounting in joules.
///
/// Balance: `input_work = flywheel_ke_delta + loss_friction + loss_aero
/// + loss_electrical + delivered_electrical`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyLedger {
    /// Work done on the flywheel by the driving shaft through the clutch.
    pub input_work: f64,
    /// Change of flywheel kinetic energy since the start of the run.
    pub flywheel_ke_delta: f64,
    /// Coulomb and viscous bearing losses.
    pub loss_friction: f64,
    /// Windage.
    pub loss_aero: f64,
    /// Alternator conversion loss plus any input refused by the charger.
    pub loss_electrical: f64,
    /// Electrical energy accepted by the charge controller.
    pub delivered_electrical: f64,
}

impl EnergyLedger {
    pub fn total_losses(&self) -> f64 {
        self.loss_friction + self.loss_aero + self.loss_electrical
    }

    /// `input − (ΔKE + losses + delivered)`.
    pub fn residual(&self) -> f64 {
        self.input_work - (self.flywheel_ke_delta + self.total_losses() + self.delivered_electrical)
    }

    /// Residual scaled by `max(1, |input|)`.
    pub fn relative_residual(&self) -> f64 {
        self.residual().abs() / self.input_work.abs().max(1.0)
    }

    pub fn is_finite(&self) -> bool {
        [
            self.input_work,
            self.flywheel_ke_delta,
            self.loss_friction,
            self.loss_aero,
            self.loss_electrical,
            self.delivered_electrical,
        ]
        .iter()
        .all(|v| v.is_finite())
    }

    /// Finite everywhere with non-negative loss and delivery terms.
    pub fn is_well_formed(&self) -> bool {
        self.is_finite()
            && self.loss_friction >= 0.0
            && self.loss_aero >= 0.0
            && self.loss_electrical >= 0.0
            && self.delivered_electrical >= 0.0
    }
}

impl std::ops::AddAssign for EnergyLedger {
    fn add_assign(&mut self, rhs: Self) {
        self.input_work += rhs.input_work;
        self.flywheel_ke_delta += rhs.flywheel_ke_delta;
        self.loss_friction += rhs.loss_friction;
        self.loss_aero += rhs.loss_aero;
        self.loss_electrical += rhs.loss_electrical;
        self.delivered_electrical += rhs.delivered_electrical;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_ledger_has_zero_residual() {
        let mut l = EnergyLedger {
            input_work: 100.0,
            flywheel_ke_delta: 40.0,
            loss_friction: 10.0,
            loss_aero: 5.0,
            loss_electrical: 9.0,
            delivered_electrical: 36.0,
        };
        assert_eq!(l.residual(), 0.0);
        assert!(l.is_well_formed());
        l += l;
        assert_eq!(l.input_work, 200.0);
        assert_eq!(l.relative_residual(), 0.0);
        l.loss_aero = -1.0;
        assert!(!l.is_well_formed());
    }
}
