//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbs_core::analysis::{fit_polynomial, literal_squared_speed_energy, Quadrature};
use rbs_core::drivetrain::{simulate, ShaftProfile};
use rbs_core::experiments::{
    bench_case, calibrate_losses, run_sweep, IntegratorSettings, Objective, Scenario, SweepAxis, SweepOptions,
    SweepSpec,
};
use rbs_core::model::{FlywheelSpec, Phase, SpeedTrace};
use rbs_core::sources::{betz_coefficient, betz_optimum, recoverable_wind_energy, regen_energy_over_cycle};
use rbs_core::sources::{DriveCycle, VehicleSpec, WindSite, WindTrace};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn within_budget(elapsed: Duration, limit_s: f64, out: Outcome) -> Outcome {
    let secs = elapsed.as_secs_f64();
    match out {
        Ok(msg) if secs < limit_s => Ok(format!("{msg} [{secs:.2} s]")),
        Ok(msg) => Err(format!("{msg}, but took {secs:.2} s (limit {limit_s} s)")),
        Err(msg) => Err(format!("{msg} [{secs:.2} s]")),
    }
}

/// Criterion 1: per-case averages of the shipped bench runs fixture.
fn table_reproduction() -> Outcome {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/bench_runs.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_rbs"))
        .arg("tables")
        .arg(&fixture)
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<(String, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[3].to_owned(), f[4].to_owned())
        })
        .collect();
    let want: Vec<(String, String)> = [("27.3", "593"), ("29.3", "1187"), ("29.3", "600")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    check(
        out.status.success() && rows == want,
        "avg energies 593/1187/600 J, avg free spin 27.3/29.3/29.3 s".into(),
        format!("got {rows:?} (exit {:?})", out.status.code()),
    )
}

/// Criterion 2: Maximum of c_b over [0, 1].
fn betz_maximum() -> Outcome {
    let (v, c) = betz_optimum();
    let at_third = betz_coefficient(1.0 / 3.0).map_err(|e| e.to_string())?;
    check(
        (v - 1.0 / 3.0).abs() < 1e-6 && (c - 16.0 / 27.0).abs() < 1e-6 && (at_third - 16.0 / 27.0).abs() < 1e-15 && c < 0.593,
        format!("c_b max {c:.8} at V_r = {v:.8}"),
        format!("c_b max {c} at V_r = {v}"),
    )
}

/// Criterion 3: Constant-wind closed form.
fn wind_closed_form() -> Outcome {
    let site = WindSite {
        rho: 1.225,
        area: 10.0,
        cut_in_velocity: 0.0,
        eta: 0.9,
    };
    let trace = WindTrace::new(vec![0.0, 10.0], vec![5.0, 5.0]).map_err(|e| e.to_string())?;
    let e = recoverable_wind_energy(&site, &trace, (0.0, 10.0), 0.5).map_err(|e| e.to_string())?;
    let rel = (e - 3445.3125).abs() / 3445.3125;
    check(rel < 1e-6, format!("{e} J (rel err {rel:.1e})"), format!("{e} J (rel err {rel:.1e})"))
}

fn viscous_decay(dt: f64) -> Scenario {
    let mut s = Scenario::new(
        FlywheelSpec::DirectInertia { inertia: 1.0 },
        ShaftProfile::Trace {
            samples: SpeedTrace::new(vec![0.0, 10.0], vec![0.0, 0.0]).unwrap(),
        },
    );
    s.losses.viscous_coeff = 0.1;
    s.alternator.load_coeff = 0.0;
    s.initial_omega_flywheel = 100.0;
    s.integrator = IntegratorSettings {
        dt,
        output_stride: 1000,
        t_end: Some(10.0),
        ..IntegratorSettings::default()
    };
    s
}

/// Criterion 4: RK4 accuracy at 1 ms and fourth-order convergence. At 1 ms the error
/// sits at round-off, so the halving ratio is measured on coarse steps.
fn integrator_order() -> Outcome {
    let exact = 100.0 * (-1.0f64).exp();
    let err = |dt: f64| -> Result<f64, String> {
        Ok((simulate(&viscous_decay(dt)).map_err(|e| e.to_string())?.omega_final - exact).abs())
    };
    let fine = err(1e-3)? / exact;
    let (e1, e2, e3) = (err(1.0)?, err(0.5)?, err(0.25)?);
    let (r1, r2) = (e1 / e2, e2 / e3);
    let ok = fine < 1e-6 && (14.0..18.0).contains(&r1) && (14.0..18.0).contains(&r2);
    let msg = format!("rel err {fine:.1e} at 1 ms; error ratios {r1:.2}, {r2:.2} for dt 1 → 0.5 → 0.25 s");
    check(ok, msg.clone(), msg)
}

fn random_scenario(rng: &mut ChaCha8Rng, lossless: bool) -> Scenario {
    let t_engage = rng.gen_range(0.0..1.0);
    let t_hold = t_engage + rng.gen_range(0.5..3.0);
    let t_release = t_hold + if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.1..2.0) };
    let t_stop = t_release + rng.gen_range(0.1..3.0);
    let flywheel = if rng.gen_bool(0.5) {
        FlywheelSpec::UniformDisk {
            mass: rng.gen_range(1.0..20.0),
            radius: rng.gen_range(0.05..0.3),
        }
    } else {
        FlywheelSpec::AnnularRim {
            density: rng.gen_range(2000.0..8000.0),
            r_outer: rng.gen_range(0.1..0.2),
            r_inner: rng.gen_range(0.02..0.09),
            thickness: rng.gen_range(0.01..0.05),
        }
    };
    let mut s = Scenario::new(
        flywheel,
        ShaftProfile::EngageHoldRelease {
            omega_hold: rng.gen_range(2.0..40.0),
            t_engage,
            t_hold,
            t_release,
            t_stop,
        },
    );
    s.gear.ratio = rng.gen_range(1.0..8.0);
    if lossless {
        s.alternator.load_coeff = 0.0;
    } else {
        s.losses.coulomb_torque = rng.gen_range(0.0..0.05);
        s.losses.viscous_coeff = rng.gen_range(0.0..0.01);
        s.losses.aero_coeff = rng.gen_range(0.0..1e-4);
        s.alternator.efficiency = rng.gen_range(0.5..1.0);
        s.alternator.load_coeff = rng.gen_range(0.0..0.01);
    }
    s.integrator.dt = rng.gen_range(5e-4..5e-3);
    s.integrator.t_end = Some(t_stop + rng.gen_range(1.0..10.0));
    s
}

/// Criterion 5: Ledger residual over randomized scenarios.
fn conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst_lossy, mut worst_lossless) = (0.0f64, 0.0f64);
    for i in 0..100 {
        let lossless = i % 5 == 0;
        let s = random_scenario(&mut rng, lossless);
        let sim = simulate(&s).map_err(|e| format!("scenario {i}: {e}"))?;
        let r = sim.ledger.relative_residual();
        if lossless {
            worst_lossless = worst_lossless.max(r);
        } else {
            worst_lossy = worst_lossy.max(r);
        }
    }
    let msg = format!("worst residual {worst_lossy:.1e} with losses, {worst_lossless:.1e} lossless (100 scenarios)");
    check(worst_lossy < 1e-6 && worst_lossless < 1e-9, msg.clone(), msg)
}

/// Criterion 6: Phase sequences for the ramp-hold-release shape and the degenerate
/// bench shape.
fn phase_machine() -> Outcome {
    let mut s = Scenario::new(
        FlywheelSpec::UniformDisk {
            mass: 10.0,
            radius: 0.2,
        },
        ShaftProfile::EngageHoldRelease {
            omega_hold: 10.0,
            t_engage: 1.0,
            t_hold: 4.0,
            t_release: 7.0,
            t_stop: 9.0,
        },
    );
    s.losses.viscous_coeff = 0.002;
    s.losses.coulomb_torque = 0.01;
    s.alternator.load_coeff = 0.002;
    s.integrator.output_stride = 1;
    let sim = simulate(&s).map_err(|e| e.to_string())?;
    let seq = sim.phase_sequence();
    let want = vec![Phase::Idle, Phase::Engaged, Phase::Synchronized, Phase::FreeSpin, Phase::Stopped];
    if seq != want {
        return Err(format!("sequence {seq:?}"));
    }
    let release = sim.free_spin.ok_or("no free spin")?.start;
    let after: Vec<f64> = sim
        .trajectory
        .iter()
        .filter(|st| st.t >= release)
        .map(|st| st.omega_flywheel)
        .collect();
    if (after[0] - sim.omega_peak).abs() > 1e-9 || after.windows(2).any(|w| w[1] > w[0]) {
        return Err("flywheel speed not maximal at release or rises afterwards".into());
    }
    let degenerate = simulate(&bench_case(2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let dseq = degenerate.phase_sequence();
    let dwant = vec![Phase::Idle, Phase::Engaged, Phase::FreeSpin, Phase::Stopped];
    check(
        dseq == dwant,
        "Idle→Engaged→Synchronized→FreeSpin→Stopped; bench case 2 Idle→Engaged→FreeSpin→Stopped".into(),
        format!("degenerate sequence {dseq:?}"),
    )
}

fn random_trace(rng: &mut ChaCha8Rng) -> SpeedTrace {
    let n = rng.gen_range(2..200);
    let mut t = rng.gen_range(-5.0..5.0);
    let mut pairs = Vec::with_capacity(n);
    for _ in 0..n {
        pairs.push((t, rng.gen_range(0.0..120.0)));
        t += rng.gen_range(1e-3..0.5);
    }
    SpeedTrace::from_pairs(&pairs).unwrap()
}

/// Plain trapezoid sum of ω² written out independently of the library.
fn trapezoid_oracle(trace: &SpeedTrace) -> f64 {
    let (t, w) = (trace.times(), trace.omegas());
    let mut total = 0.0;
    for k in 1..t.len() {
        total += 0.5 * (t[k] - t[k - 1]) * (w[k - 1] * w[k - 1] + w[k] * w[k]);
    }
    total
}

/// Criterion 7: Quadratic recovery and the squared-speed evaluator against a
/// trapezoid oracle.
fn fit_recovery() -> Outcome {
    let trace = SpeedTrace::sample_fn(0.0, 10.0, 21, |t| -2.0 * t * t + 3.0 * t + 500.0).unwrap();
    let fit = fit_polynomial(&trace, 2).map_err(|e| e.to_string())?;
    let coef_err = fit
        .coefficients
        .iter()
        .zip([500.0, 3.0, -2.0])
        .map(|(c, w)| (c - w).abs())
        .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (fs, b) = (random_trace(&mut rng), random_trace(&mut rng));
        let inertia = rng.gen_range(0.01..5.0);
        let got = literal_squared_speed_energy(&fs, &b, inertia, Quadrature::Trapezoid).map_err(|e| e.to_string())?;
        let want = 0.5 * inertia * (trapezoid_oracle(&fs) - trapezoid_oracle(&b));
        worst = worst.max((got - want).abs() / want.abs());
    }
    let msg = format!("coefficient error {coef_err:.1e}; worst relative mismatch {worst:.1e} over 50 trace pairs");
    check(coef_err < 1e-8 && worst < 1e-9, msg.clone(), msg)
}

/// Criterion 8: Vehicle stop from 20 m/s.
fn vehicle_energy() -> Outcome {
    let cycle = DriveCycle::flat(vec![0.0, 10.0], vec![20.0, 0.0]).map_err(|e| e.to_string())?;
    let lossless = regen_energy_over_cycle(&VehicleSpec::new(1000.0), &cycle, 1.0).map_err(|e| e.to_string())?;
    let mut lossy_spec = VehicleSpec::new(1000.0);
    lossy_spec.drag_area = 0.6;
    lossy_spec.air_density = 1.225;
    lossy_spec.rolling_coeff = 0.01;
    let lossy = regen_energy_over_cycle(&lossy_spec, &cycle, 1.0).map_err(|e| e.to_string())?;
    let resid = lossy.decomposition_residual().abs() / lossy.gross_delta_ke.abs();
    let msg = format!(
        "lossless {} J; with drag and rolling {:.3} J; decomposition residual {resid:.1e}",
        lossless.net_recoverable, lossy.net_recoverable
    );
    check(
        lossless.net_recoverable == 200000.0 && lossy.net_recoverable < 200000.0 && resid < 1e-9,
        msg.clone(),
        msg,
    )
}

fn sweep_base() -> Scenario {
    let mut s = Scenario::new(
        FlywheelSpec::UniformDisk {
            mass: 5.0,
            radius: 0.15,
        },
        ShaftProfile::EngageHoldRelease {
            omega_hold: 10.0,
            t_engage: 0.5,
            t_hold: 2.0,
            t_release: 2.5,
            t_stop: 3.0,
        },
    );
    s.losses.viscous_coeff = 0.002;
    s.alternator.load_coeff = 0.003;
    s.integrator.dt = 2e-3;
    s.integrator.t_end = Some(6.0);
    s
}

/// Criterion 9: Sweep argmax and per-cell reproducibility on 27 cells.
fn sweep_oracle() -> Outcome {
    let axis = |path: &str, values: &[f64]| SweepAxis {
        path: path.into(),
        values: values.to_vec(),
    };
    let spec = SweepSpec {
        axes: vec![
            axis("gear.ratio", &[2.0, 3.0, 4.0]),
            axis("losses.viscous_coeff", &[0.0, 0.005, 0.02]),
            axis("alternator.load_coeff", &[0.001, 0.01, 0.05]),
        ],
        objective: Objective::DeliveredElectrical,
    };
    let base = sweep_base();
    let rows = run_sweep(&spec, &base, SweepOptions::default()).map_err(|e| e.to_string())?;
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for &a in &spec.axes[0].values {
        for &b in &spec.axes[1].values {
            for &c in &spec.axes[2].values {
                let mut s = base.clone();
                s.gear.ratio = a;
                s.losses.viscous_coeff = b;
                s.alternator.load_coeff = c;
                let v = simulate(&s).map_err(|e| e.to_string())?.ledger.delivered_electrical;
                if v > best.0 {
                    best = (v, vec![a, b, c]);
                }
            }
        }
    }
    let mut mismatched = 0;
    for row in &rows {
        let alone = simulate(&spec.cell_scenario(&base, &row.values).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if alone.ledger != row.ledger || alone.ledger.delivered_electrical.to_bits() != row.objective.to_bits() {
            mismatched += 1;
        }
    }
    check(
        rows.len() == 27 && rows[0].values == best.1 && mismatched == 0,
        format!("argmax {:?} matches enumeration; 27/27 cells reproduce bit-identically", best.1),
        format!("sweep argmax {:?} vs {:?}; {mismatched} cells differ", rows[0].values, best.1),
    )
}

/// Criterion 10: Viscous coefficient recovered from its closed-form free-spin time.
fn calibration_inversion() -> Outcome {
    let omega0 = 52.36;
    let c_true = 0.04;
    let mut s = Scenario::new(
        FlywheelSpec::DirectInertia { inertia: 1.0 },
        ShaftProfile::Trace {
            samples: SpeedTrace::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap(),
        },
    );
    s.alternator.load_coeff = 0.0;
    s.initial_omega_flywheel = omega0;
    s.integrator.dt = 0.01;
    let target = (1.0 / c_true) * (omega0 / s.omega_stop_threshold).ln();
    let model = calibrate_losses(target, &s, (0.005, 0.5)).map_err(|e| e.to_string())?;
    let rel = (model.viscous_coeff - c_true).abs() / c_true;
    let msg = format!("recovered c = {:.9} for c = {c_true} (rel err {rel:.1e})", model.viscous_coeff);
    check(rel < 1e-4, msg.clone(), msg)
}

fn main() {
    type Criterion = (&'static str, f64, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Bench averages", 1.0, table_reproduction),
        ("Betz maximum", 1.0, betz_maximum),
        ("Wind energy closed form", 1.0, wind_closed_form),
        ("Integrator order", 5.0, integrator_order),
        ("Conservation", 60.0, conservation),
        ("Phase machine", f64::INFINITY, phase_machine),
        ("Fit recovery", 5.0, fit_recovery),
        ("Vehicle energy", f64::INFINITY, vehicle_energy),
        ("Sweep oracle", f64::INFINITY, sweep_oracle),
        ("Calibration inversion", f64::INFINITY, calibration_inversion),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        match within_budget(start.elapsed(), *limit, outcome) {
            Ok(msg) => println!("PASS {:>2}. {name}: {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2}. {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
