//! Phase classification of drivetrain samples.

use crate::model::Phase;

use super::sim::RbsState;

/// What the classifier needs to know about the preceding sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseContext {
    pub previous_phase: Phase,
    pub previous_omega_flywheel: f64,
    pub omega_stop_threshold: f64,
}

impl PhaseContext {
    /// Context for classifying the first sample of a run.
    pub fn initial(omega_flywheel: f64, omega_stop_threshold: f64) -> Self {
        Self {
            previous_phase: Phase::Idle,
            previous_omega_flywheel: omega_flywheel,
            omega_stop_threshold,
        }
    }
}

/// Classifies `state` given the previous sample.
///
/// Below the stop threshold the flywheel is `Idle` until it has been spun up
/// and `Stopped` afterwards. An engaged flywheel that is still gaining speed
/// is `Engaged`; once it stops gaining it is `Synchronized`. A disengaged
/// spinning flywheel is `FreeSpin`. Phases never move backwards, so a
/// re-engagement after free spin stays reported as the later phase (the
/// `engaged` flag on the state still shows it).
pub fn phase_of(state: &RbsState, ctx: &PhaseContext) -> Phase {
    let omega = state.omega_flywheel;
    let candidate = if omega < ctx.omega_stop_threshold {
        if ctx.previous_phase == Phase::Idle {
            Phase::Idle
        } else {
            Phase::Stopped
        }
    } else if state.engaged {
        if omega > ctx.previous_omega_flywheel {
            Phase::Engaged
        } else {
            Phase::Synchronized
        }
    } else {
        Phase::FreeSpin
    };
    candidate.max(ctx.previous_phase)
}
