//! Fixed-step simulation of the clutch/flywheel/alternator chain.

use serde::{Deserialize, Serialize};

use crate::electrical::{charge_step, Alternator, ChargeEvent, UltracapBank};
use crate::error::{RbsError, Result};
use crate::experiments::Scenario;
use crate::model::{EnergyLedger, Phase};

use super::clutch::{clutch_engaged, GearTrain};
use super::losses::LossModel;
use super::phase::{phase_of, PhaseContext};
use super::profile::ShaftProfile;
use super::rk4::rk4_step;

/// Instantaneous drivetrain state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RbsState {
    pub t: f64,
    pub omega_shaft: f64,
    pub omega_flywheel: f64,
    pub engaged: bool,
    pub phase: Phase,
    /// Running totals since the start of the run.
    pub ledger: EnergyLedger,
}

impl RbsState {
    fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.omega_shaft.is_finite()
            && self.omega_flywheel.is_finite()
            && self.ledger.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseInterval {
    pub phase: Phase,
    pub t_start: f64,
    pub t_end: f64,
}

/// Disengagement instant and (interpolated) stop time of the free spin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeSpinWindow {
    pub start: f64,
    pub end: Option<f64>,
}

impl FreeSpinWindow {
    pub fn duration(&self) -> Option<f64> {
        self.end.map(|end| end - self.start)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Work {
    friction: f64,
    aero: f64,
    alternator: f64,
}

impl Work {
    fn total(&self) -> f64 {
        self.friction + self.aero + self.alternator
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutput {
    pub state: RbsState,
    /// Electrical energy produced by the alternator during the step.
    pub electrical_energy: f64,
}

/// Resolved physical parameters of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Drivetrain {
    pub inertia: f64,
    pub gear: GearTrain,
    pub losses: LossModel,
    pub alternator: Alternator,
    pub profile: ShaftProfile,
    pub eps_sync: f64,
    pub omega_stop_threshold: f64,
}

impl Drivetrain {
    pub fn from_scenario(scenario: &Scenario) -> Result<Self> {
        scenario.validate()?;
        Ok(Self {
            inertia: scenario.flywheel.inertia()?,
            gear: scenario.gear,
            losses: scenario.losses,
            alternator: scenario.alternator,
            profile: scenario.shaft_profile.clone(),
            eps_sync: scenario.eps_sync,
            omega_stop_threshold: scenario.omega_stop_threshold,
        })
    }

    fn kinetic_energy(&self, omega: f64) -> f64 {
        0.5 * self.inertia * omega * omega
    }

    /// State at t = 0. The clutch only counts as engaged if the flywheel
    /// already turns at the geared shaft speed.
    pub fn initial_state(&self, omega_flywheel: f64) -> RbsState {
        let omega_shaft = self.profile.speed_at(0.0);
        let slaved = self.gear.ratio * omega_shaft;
        let engaged = clutch_engaged(omega_shaft, omega_flywheel, &self.gear, self.eps_sync)
            && (omega_flywheel - slaved).abs() <= self.eps_sync;
        let mut state = RbsState {
            t: 0.0,
            omega_shaft,
            omega_flywheel,
            engaged,
            phase: Phase::Idle,
            ledger: EnergyLedger::default(),
        };
        state.phase = phase_of(
            &state,
            &PhaseContext::initial(omega_flywheel, self.omega_stop_threshold),
        );
        state
    }

    fn power_split(&self, omega: f64) -> [f64; 3] {
        let w = omega.max(0.0);
        [
            self.losses.friction_torque(w) * w,
            self.losses.aero_torque(w) * w,
            self.alternator.shaft_power(w),
        ]
    }

    /// Free coast over `dt`: RK4 on speed plus the work absorbed by each
    /// load. A flywheel that would reverse is stopped, and its remaining
    /// energy is shared out in proportion to the absorbed work.
    fn coast(&self, omega0: f64, t: f64, dt: f64) -> (f64, Work) {
        let inertia = self.inertia;
        let y = rk4_step(t, [omega0, 0.0, 0.0, 0.0], dt, |_, y| {
            let w = y[0].max(0.0);
            let [pf, pa, pg] = self.power_split(w);
            let torque = if w > 0.0 { (pf + pa + pg) / w } else { 0.0 };
            [-torque / inertia, pf, pa, pg]
        });
        let mut work = Work {
            friction: y[1],
            aero: y[2],
            alternator: y[3],
        };
        if y[0] > 0.0 || omega0 <= 0.0 {
            return (y[0].max(0.0), work);
        }
        let released = self.kinetic_energy(omega0);
        let absorbed = work.total();
        if absorbed > 0.0 {
            let scale = released / absorbed;
            work.friction *= scale;
            work.aero *= scale;
            work.alternator *= scale;
        } else {
            work = Work {
                friction: released,
                ..Work::default()
            };
        }
        (0.0, work)
    }

    /// Load work along a slaved speed path (Simpson over start, mid, end).
    fn slaved_work(&self, w0: f64, wm: f64, w1: f64, dt: f64) -> Work {
        let [f0, a0, g0] = self.power_split(w0);
        let [fm, am, gm] = self.power_split(wm);
        let [f1, a1, g1] = self.power_split(w1);
        let simpson = |p0: f64, pm: f64, p1: f64| dt / 6.0 * (p0 + 4.0 * pm + p1);
        Work {
            friction: simpson(f0, fm, f1),
            aero: simpson(a0, am, a1),
            alternator: simpson(g0, gm, g1),
        }
    }

    /// Advances `state` by `dt`.
    ///
    /// The flywheel is first coasted freely; if the geared shaft speed then
    /// keeps up with it the clutch engages and the flywheel is slaved to the
    /// shaft, the shaft supplying the kinetic energy change plus load work.
    pub fn step(&self, state: &RbsState, dt: f64) -> Result<StepOutput> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(RbsError::InvalidStep(format!("dt must be positive, got {dt}")));
        }
        if !state.is_finite() {
            return Err(RbsError::NumericFault(format!("non-finite state at t = {}", state.t)));
        }
        let t1 = state.t + dt;
        let omega_shaft = self.profile.speed_at(t1);
        let (coasted, coast_work) = self.coast(state.omega_flywheel, state.t, dt);
        if !coasted.is_finite() || !coast_work.total().is_finite() {
            return Err(RbsError::NumericFault(format!(
                "flywheel speed diverged at t = {t1}"
            )));
        }

        let engaged = clutch_engaged(omega_shaft, coasted, &self.gear, self.eps_sync);
        let omega0 = state.omega_flywheel;
        let (omega1, work) = if engaged {
            let slaved = self.gear.ratio * omega_shaft;
            let mid = self.gear.ratio * self.profile.speed_at(state.t + 0.5 * dt);
            (slaved, self.slaved_work(omega0, mid, slaved, dt))
        } else {
            (coasted, coast_work)
        };

        let ke_delta = self.kinetic_energy(omega1) - self.kinetic_energy(omega0);
        let (electrical, conversion_loss) = self.alternator.convert(work.alternator);
        let mut ledger = state.ledger;
        ledger.flywheel_ke_delta += ke_delta;
        ledger.loss_friction += work.friction;
        ledger.loss_aero += work.aero;
        ledger.loss_electrical += conversion_loss;
        ledger.delivered_electrical += electrical;
        if engaged {
            ledger.input_work += ke_delta + work.total();
        }

        let mut next = RbsState {
            t: t1,
            omega_shaft,
            omega_flywheel: omega1,
            engaged,
            phase: state.phase,
            ledger,
        };
        if !next.is_finite() {
            return Err(RbsError::NumericFault(format!("non-finite state at t = {t1}")));
        }
        next.phase = phase_of(
            &next,
            &PhaseContext {
                previous_phase: state.phase,
                previous_omega_flywheel: omega0,
                omega_stop_threshold: self.omega_stop_threshold,
            },
        );
        Ok(StepOutput {
            state: next,
            electrical_energy: electrical,
        })
    }
}

/// Result of [`simulate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    /// States at the output stride, always including the first and last.
    pub trajectory: Vec<RbsState>,
    pub ledger: EnergyLedger,
    pub phases: Vec<PhaseInterval>,
    pub events: Vec<ChargeEvent>,
    /// Bank state at the end of the run.
    pub bank: UltracapBank,
    pub inertia: f64,
    pub omega_initial: f64,
    pub omega_peak: f64,
    pub omega_final: f64,
    pub free_spin: Option<FreeSpinWindow>,
    pub steps: u64,
}

impl Simulation {
    pub fn phase_sequence(&self) -> Vec<Phase> {
        self.phases.iter().map(|p| p.phase).collect()
    }

    /// Kinetic energy released after the peak, ½I(ω_peak² − ω_final²).
    pub fn net_recovered_energy(&self) -> f64 {
        0.5 * self.inertia * (self.omega_peak.powi(2) - self.omega_final.powi(2))
    }

    /// Kinetic energy gained from the start to the peak, ½I(ω_peak² − ω_0²).
    pub fn captured_energy(&self) -> f64 {
        0.5 * self.inertia * (self.omega_peak.powi(2) - self.omega_initial.powi(2))
    }

    pub fn free_spin_duration(&self) -> Option<f64> {
        self.free_spin.and_then(|w| w.duration())
    }

    pub fn dumped_energy(&self) -> f64 {
        self.events.iter().map(|e| e.energy_dumped).sum()
    }
}

/// Runs a scenario to its horizon.
pub fn simulate(scenario: &Scenario) -> Result<Simulation> {
    let drivetrain = Drivetrain::from_scenario(scenario)?;
    let settings = scenario.integrator;
    let horizon = settings.t_end.unwrap_or(settings.max_time);
    let profile_end = drivetrain.profile.end_time();
    let threshold = drivetrain.omega_stop_threshold;

    let mut state = drivetrain.initial_state(scenario.initial_omega_flywheel);
    let mut bank = scenario.bank;
    let mut events = Vec::new();
    let mut trajectory = vec![state];
    let mut phases = vec![PhaseInterval {
        phase: state.phase,
        t_start: 0.0,
        t_end: 0.0,
    }];
    let mut omega_peak = state.omega_flywheel;
    let mut free_spin = (state.phase == Phase::FreeSpin).then_some(FreeSpinWindow {
        start: 0.0,
        end: None,
    });

    let mut k: u64 = 0;
    while state.t < horizon {
        k += 1;
        let t_next = (k as f64 * settings.dt).min(horizon);
        let dt = t_next - state.t;
        let prev = state;
        let out = drivetrain.step(&prev, dt)?;
        state = out.state;
        state.t = t_next;

        if out.electrical_energy > 0.0 {
            let charge = charge_step(
                &bank,
                out.electrical_energy / dt,
                dt,
                scenario.trickle_min,
                t_next,
            )?;
            bank = charge.bank;
            events.extend(charge.events);
            if charge.rejected > 0.0 {
                let moved = charge.rejected.min(state.ledger.delivered_electrical);
                state.ledger.delivered_electrical -= moved;
                state.ledger.loss_electrical += moved;
            }
        }

        omega_peak = omega_peak.max(state.omega_flywheel);
        if state.phase == Phase::FreeSpin && free_spin.is_none() {
            let start = if prev.engaged { prev.t } else { state.t };
            free_spin = Some(FreeSpinWindow { start, end: None });
        }
        if state.phase == Phase::Stopped && prev.phase != Phase::Stopped {
            if let Some(window) = free_spin.as_mut() {
                let (w0, w1) = (prev.omega_flywheel, state.omega_flywheel);
                let frac = if w0 > w1 { ((w0 - threshold) / (w0 - w1)).clamp(0.0, 1.0) } else { 1.0 };
                window.end = Some(prev.t + frac * (state.t - prev.t));
            }
        }

        let last = phases.last_mut().expect("timeline starts non-empty");
        if last.phase == state.phase {
            last.t_end = state.t;
        } else {
            phases.push(PhaseInterval {
                phase: state.phase,
                t_start: state.t,
                t_end: state.t,
            });
        }

        if k.is_multiple_of(settings.output_stride as u64) {
            trajectory.push(state);
        }
        if settings.t_end.is_none() && state.phase == Phase::Stopped && state.t >= profile_end {
            break;
        }
    }
    if trajectory.last().map(|s| s.t) != Some(state.t) {
        trajectory.push(state);
    }
    if !state.ledger.is_finite() {
        return Err(RbsError::NumericFault("energy ledger became non-finite".into()));
    }

    Ok(Simulation {
        trajectory,
        ledger: state.ledger,
        phases,
        events,
        bank,
        inertia: drivetrain.inertia,
        omega_initial: scenario.initial_omega_flywheel,
        omega_peak,
        omega_final: state.omega_flywheel,
        free_spin,
        steps: k,
    })
}
