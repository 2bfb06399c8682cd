//! Energy evaluators for bench-top speed traces.
//!
//! Two evaluators keep the bench integral forms exactly as written. Neither
//! has units of energy: the phase-integral form squares time integrals of ω
//! and the squared-speed form integrates ω² over time. They are kept for
//! comparison next to [`net_recovered_energy`], which is a true kinetic
//! energy difference.

use serde::{Deserialize, Serialize};

use super::polyfit::{fit_polynomial, PolyFit};
use super::quadrature::{integrate, integrate_trace, Quadrature};
use crate::error::{RbsError, Result};
use crate::model::SpeedTrace;

fn check_inertia(inertia: f64) -> Result<()> {
    if !(inertia.is_finite() && inertia > 0.0) {
        return Err(RbsError::InvalidInput(format!("inertia must be positive, got {inertia}")));
    }
    Ok(())
}

/// ½I(−a₁² + a₂² + a₃²) for already-computed phase integrals aₖ = ∫ωₖ dt.
pub fn phase_integral_energy_from_integrals(inertia: f64, a1: f64, a2: f64, a3: f64) -> f64 {
    0.5 * inertia * (-a1 * a1 + a2 * a2 + a3 * a3)
}

/// ½I{−[∫ω₁dt]² + [∫ω₂dt]² + [∫ω₃dt]²} over three consecutive segments.
/// Units are kg·m²·rad², not joules.
pub fn literal_phase_integral_energy(
    seg1: &SpeedTrace,
    seg2: &SpeedTrace,
    seg3: &SpeedTrace,
    inertia: f64,
    method: Quadrature,
) -> Result<f64> {
    check_inertia(inertia)?;
    let a1 = integrate_trace(seg1, method)?;
    let a2 = integrate_trace(seg2, method)?;
    let a3 = integrate_trace(seg3, method)?;
    Ok(phase_integral_energy_from_integrals(inertia, a1, a2, a3))
}

/// ½I(∫ω_fs² dt − ∫ω_b² dt). Units are J·s.
pub fn literal_squared_speed_energy(
    free_spin: &SpeedTrace,
    braking: &SpeedTrace,
    inertia: f64,
    method: Quadrature,
) -> Result<f64> {
    check_inertia(inertia)?;
    let fs = squared_integral(free_spin.times(), free_spin.omegas(), method)?;
    let b = squared_integral(braking.times(), braking.omegas(), method)?;
    Ok(0.5 * inertia * (fs - b))
}

fn squared_integral(t: &[f64], omega: &[f64], method: Quadrature) -> Result<f64> {
    let sq: Vec<f64> = omega.iter().map(|w| w * w).collect();
    integrate(t, &sq, method)
}

/// ½I(ω_peak² − ω_end²), with ω_peak the largest speed in either trace and
/// ω_end the last free-spin sample.
pub fn net_recovered_energy(free_spin: &SpeedTrace, braking: &SpeedTrace, inertia: f64) -> Result<f64> {
    check_inertia(inertia)?;
    let peak = free_spin.max_omega().max(braking.max_omega());
    let end = free_spin.last_omega();
    Ok(0.5 * inertia * (peak * peak - end * end))
}

/// Sample indices splitting a single bench run into spin-up, plateau and
/// free-spin segments. Segments share their boundary samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchSegments {
    /// First sample within tolerance of the peak.
    pub plateau_start: usize,
    /// Last sample within tolerance of the peak.
    pub plateau_end: usize,
    pub len: usize,
}

/// Locates the plateau as the samples within `plateau_tol` (relative) of the
/// peak speed.
pub fn segment_bench_trace(trace: &SpeedTrace, plateau_tol: f64) -> Result<BenchSegments> {
    if !(plateau_tol.is_finite() && (0.0..1.0).contains(&plateau_tol)) {
        return Err(RbsError::InvalidInput(format!(
            "plateau tolerance must lie in [0, 1), got {plateau_tol}"
        )));
    }
    let peak = trace.max_omega();
    let floor = peak * (1.0 - plateau_tol);
    let omegas = trace.omegas();
    let plateau_start = omegas.iter().position(|&w| w >= floor).unwrap_or(0);
    let plateau_end = omegas.iter().rposition(|&w| w >= floor).unwrap_or(plateau_start);
    Ok(BenchSegments {
        plateau_start,
        plateau_end,
        len: omegas.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchAnalysis {
    pub segments: BenchSegments,
    /// Fit over the whole trace.
    pub fit: PolyFit,
    /// Phase integrals ∫ω dt over spin-up, plateau and free spin.
    pub phase_integrals: [f64; 3],
    pub phase_integral_energy: f64,
    pub squared_speed_energy: f64,
    pub net_recovered_energy: f64,
    pub omega_peak: f64,
    pub omega_end: f64,
}

/// Splits a single-run trace, fits it, and evaluates all three energies.
/// A segment holding a single sample contributes a zero integral.
pub fn analyze_bench_trace(
    trace: &SpeedTrace,
    inertia: f64,
    degree: usize,
    method: Quadrature,
) -> Result<BenchAnalysis> {
    check_inertia(inertia)?;
    let fit = fit_polynomial(trace, degree)?;
    let segments = segment_bench_trace(trace, 1e-9)?;
    let (t, w) = (trace.times(), trace.omegas());
    let last = w.len() - 1;
    let ranges = [
        (0, segments.plateau_start),
        (segments.plateau_start, segments.plateau_end),
        (segments.plateau_end, last),
    ];
    let mut phase_integrals = [0.0; 3];
    for (slot, &(a, b)) in phase_integrals.iter_mut().zip(&ranges) {
        if b > a {
            *slot = integrate(&t[a..=b], &w[a..=b], method)?;
        }
    }
    let sq = |(a, b): (usize, usize)| -> Result<f64> {
        if b > a {
            squared_integral(&t[a..=b], &w[a..=b], method)
        } else {
            Ok(0.0)
        }
    };
    let squared_speed_energy = 0.5 * inertia * (sq(ranges[2])? - sq(ranges[0])?);
    let omega_peak = trace.max_omega();
    let omega_end = trace.last_omega();
    Ok(BenchAnalysis {
        segments,
        fit,
        phase_integrals,
        phase_integral_energy: phase_integral_energy_from_integrals(
            inertia,
            phase_integrals[0],
            phase_integrals[1],
            phase_integrals[2],
        ),
        squared_speed_energy,
        net_recovered_energy: 0.5 * inertia * (omega_peak * omega_peak - omega_end * omega_end),
        omega_peak,
        omega_end,
    })
}
