//! Drivetrain phases of a single braking event.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Phase of the flywheel/shaft pair, in the order a braking event visits
/// them. `Synchronized` may be skipped (spin-up ends exactly when the shaft
/// releases).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    /// Flywheel has not been spun up yet.
    Idle,
    /// Clutch engaged and flywheel speed rising.
    Engaged,
    /// Clutch engaged after the flywheel stopped gaining speed.
    Synchronized,
    /// Clutch overrun, flywheel coasting against its loads.
    FreeSpin,
    /// Flywheel below the stop threshold after having been spun up.
    Stopped,
}

impl Phase {
    pub const ALL: [Phase; 5] = [
        Phase::Idle,
        Phase::Engaged,
        Phase::Synchronized,
        Phase::FreeSpin,
        Phase::Stopped,
    ];

    /// Legal forward transitions (staying put is always allowed).
    pub fn can_transition_to(self, next: Phase) -> bool {
        use Phase::*;
        self == next
            || matches!(
                (self, next),
                (Idle, Engaged)
                    | (Engaged, Synchronized)
                    | (Engaged, FreeSpin)
                    | (Synchronized, FreeSpin)
                    | (FreeSpin, Stopped)
            )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Idle => "Idle",
            Phase::Engaged => "Engaged",
            Phase::Synchronized => "Synchronized",
            Phase::FreeSpin => "FreeSpin",
            Phase::Stopped => "Stopped",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Phase::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown phase {s:?}"))
    }
}
