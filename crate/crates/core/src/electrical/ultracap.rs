//! Trickle charge controller feeding an ultracapacitor bank.
//!
//! The bank accumulates whatever the alternator delivers. Each time its
//! voltage reaches `v_dump` it is emptied down to `v_reset` into the
//! principal store, which is modelled as an instantaneous lossless transfer.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Destination {
    #[default]
    Battery,
    Grid,
}

impl Destination {
    pub fn as_str(self) -> &'static str {
        match self {
            Destination::Battery => "battery",
            Destination::Grid => "grid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UltracapBank {
    /// Farads.
    pub capacitance: f64,
    /// Present voltage.
    #[serde(default)]
    pub voltage: f64,
    pub v_max: f64,
    /// Voltage at which the bank is dumped, at most `v_max`.
    pub v_dump: f64,
    /// Voltage left after a dump, below `v_dump`.
    #[serde(default)]
    pub v_reset: f64,
    #[serde(default)]
    pub destination: Destination,
}

impl Default for UltracapBank {
    fn default() -> Self {
        Self {
            capacitance: 100.0,
            voltage: 0.0,
            v_max: 16.0,
            v_dump: 15.0,
            v_reset: 0.0,
            destination: Destination::Battery,
        }
    }
}

/// Energy moved from the bank to the principal store.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeEvent {
    pub t: f64,
    pub energy_dumped: f64,
    pub destination: Destination,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChargeOutcome {
    pub bank: UltracapBank,
    pub events: Vec<ChargeEvent>,
    /// Energy taken into the bank this step.
    pub accepted: f64,
    /// Energy turned away by the trickle cutoff.
    pub rejected: f64,
}

impl UltracapBank {
    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.capacitance, self.voltage, self.v_max, self.v_dump, self.v_reset]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite || self.capacitance <= 0.0 {
            return Err(RbsError::Config(format!(
                "ultracapacitor capacitance must be positive and voltages finite ({self:?})"
            )));
        }
        if self.v_max <= 0.0 {
            return Err(RbsError::Config(format!("v_max must be positive, got {}", self.v_max)));
        }
        if self.v_dump > self.v_max {
            return Err(RbsError::Config(format!(
                "v_dump {} exceeds v_max {}",
                self.v_dump, self.v_max
            )));
        }
        if !(self.v_reset >= 0.0 && self.v_reset < self.v_dump) {
            return Err(RbsError::Config(format!(
                "v_reset {} must lie in [0, v_dump {})",
                self.v_reset, self.v_dump
            )));
        }
        if !(self.voltage >= 0.0 && self.voltage <= self.v_max) {
            return Err(RbsError::Config(format!(
                "bank voltage {} outside [0, v_max {}]",
                self.voltage, self.v_max
            )));
        }
        Ok(())
    }

    fn energy_at(&self, voltage: f64) -> f64 {
        0.5 * self.capacitance * voltage * voltage
    }

    /// Stored energy ½CV².
    pub fn energy(&self) -> f64 {
        self.energy_at(self.voltage)
    }

    pub fn max_energy(&self) -> f64 {
        self.energy_at(self.v_max)
    }

    fn voltage_for(&self, energy: f64) -> f64 {
        (2.0 * energy / self.capacitance).sqrt()
    }
}

/// Feeds `p_in` watts for `dt` seconds into the bank.
///
/// Power below `trickle_min` is refused (a cutoff of 0 accepts everything).
/// `t_end` stamps any dump events raised during the step.
pub fn charge_step(
    bank: &UltracapBank,
    p_in: f64,
    dt: f64,
    trickle_min: f64,
    t_end: f64,
) -> Result<ChargeOutcome> {
    bank.validate()?;
    if !(p_in.is_finite() && p_in >= 0.0) {
        return Err(RbsError::InvalidInput(format!(
            "charging power must be non-negative, got {p_in}"
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(RbsError::InvalidStep(format!("dt must be positive, got {dt}")));
    }
    let incoming = p_in * dt;
    if p_in < trickle_min || incoming == 0.0 {
        return Ok(ChargeOutcome {
            bank: *bank,
            events: Vec::new(),
            accepted: 0.0,
            rejected: incoming,
        });
    }

    let dump_level = bank.energy_at(bank.v_dump);
    let reset_level = bank.energy_at(bank.v_reset);
    let mut stored = bank.energy() + incoming;
    let mut events = Vec::new();
    while stored >= dump_level {
        events.push(ChargeEvent {
            t: t_end,
            energy_dumped: dump_level - reset_level,
            destination: bank.destination,
        });
        stored -= dump_level - reset_level;
    }
    let mut next = *bank;
    next.voltage = bank.voltage_for(stored).min(bank.v_max);
    Ok(ChargeOutcome {
        bank: next,
        events,
        accepted: incoming,
        rejected: 0.0,
    })
}
