//! Composite quadrature over irregularly spaced samples.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};
use crate::model::trace::validate_abscissae;
use crate::model::SpeedTrace;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quadrature {
    Trapezoid,
    /// Simpson on consecutive pairs of (possibly unequal) steps; a trailing
    /// odd step uses the trapezoid rule.
    #[default]
    Simpson,
}

/// Integrates samples `f(t)` over their full span.
pub fn integrate(t: &[f64], f: &[f64], method: Quadrature) -> Result<f64> {
    if t.len() != f.len() {
        return Err(RbsError::InvalidInput(format!(
            "{} abscissae but {} ordinates",
            t.len(),
            f.len()
        )));
    }
    validate_abscissae(t, "integrand")?;
    if let Some(bad) = f.iter().find(|v| !v.is_finite()) {
        return Err(RbsError::InvalidInput(format!("integrand value {bad} is not finite")));
    }
    Ok(match method {
        Quadrature::Trapezoid => trapezoid(t, f),
        Quadrature::Simpson => simpson(t, f),
    })
}

pub fn integrate_trace(trace: &SpeedTrace, method: Quadrature) -> Result<f64> {
    integrate(trace.times(), trace.omegas(), method)
}

fn trapezoid(t: &[f64], f: &[f64]) -> f64 {
    t.windows(2)
        .zip(f.windows(2))
        .map(|(t, f)| 0.5 * (t[1] - t[0]) * (f[0] + f[1]))
        .sum()
}

fn simpson(t: &[f64], f: &[f64]) -> f64 {
    let n = t.len() - 1;
    let mut total = 0.0;
    let mut i = 0;
    while i + 2 <= n {
        let h0 = t[i + 1] - t[i];
        let h1 = t[i + 2] - t[i + 1];
        let span = h0 + h1;
        total += span / 6.0
            * ((2.0 - h1 / h0) * f[i] + span * span / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if i < n {
        total += 0.5 * (t[n] - t[n - 1]) * (f[n - 1] + f[n]);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize) -> Vec<f64> {
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }

    #[test]
    fn constant_is_exact() {
        let t: Vec<f64> = (0..=10).map(|i| i as f64).collect();
        let f = vec![1.0; t.len()];
        assert_eq!(integrate(&t, &f, Quadrature::Trapezoid).unwrap(), 10.0);
        assert_eq!(integrate(&t, &f, Quadrature::Simpson).unwrap(), 10.0);
    }

    #[test]
    fn linear_both_methods() {
        for n in [1, 2, 7, 10] {
            let t = grid(n);
            for m in [Quadrature::Trapezoid, Quadrature::Simpson] {
                let v = integrate(&t, &t, m).unwrap();
                assert!((v - 0.5).abs() < 1e-12, "{m:?} n={n}: {v}");
            }
        }
    }

    #[test]
    fn simpson_exact_for_quadratics() {
        let t = grid(10);
        let f: Vec<f64> = t.iter().map(|x| x * x).collect();
        let v = integrate(&t, &f, Quadrature::Simpson).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        // uneven pairs too
        let t = [0.0, 0.1, 0.45, 0.5, 0.9, 1.0];
        let f: Vec<f64> = t.iter().map(|x| 3.0 * x * x - x + 2.0).collect();
        let t_even: Vec<f64> = t[..5].to_vec();
        let exact = |a: f64, b: f64| (b.powi(3) - b * b / 2.0 + 2.0 * b) - (a.powi(3) - a * a / 2.0 + 2.0 * a);
        let v = integrate(&t_even, &f[..5], Quadrature::Simpson).unwrap();
        assert!((v - exact(0.0, 0.9)).abs() < 1e-12);
    }

    #[test]
    fn simpson_converges_fourth_order() {
        let err = |n: usize| {
            let t = grid(n);
            let f: Vec<f64> = t.iter().map(|x| x.exp()).collect();
            (integrate(&t, &f, Quadrature::Simpson).unwrap() - (1f64.exp() - 1.0)).abs()
        };
        let ratio = err(8) / err(16);
        assert!((ratio - 16.0).abs() < 0.5, "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(integrate(&[0.0], &[1.0], Quadrature::Simpson).is_err());
        assert!(integrate(&[0.0, 1.0], &[1.0], Quadrature::Simpson).is_err());
        assert!(integrate(&[0.0, 0.0], &[1.0, 1.0], Quadrature::Trapezoid).is_err());
        assert!(integrate(&[0.0, 1.0], &[1.0, f64::NAN], Quadrature::Trapezoid).is_err());
    }

    proptest! {
        #[test]
        fn simpson_exact_on_irregular_quadratics(
            steps in proptest::collection::vec(0.01f64..2.0, 2..40),
            a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0,
        ) {
            let mut t = vec![0.0];
            for s in &steps { t.push(t.last().unwrap() + s); }
            // keep an even number of steps so no trapezoid tail
            if (t.len() - 1) % 2 == 1 { t.pop(); }
            let f: Vec<f64> = t.iter().map(|x| a * x * x + b * x + c).collect();
            let end = *t.last().unwrap();
            let exact = a * end.powi(3) / 3.0 + b * end * end / 2.0 + c * end;
            let v = integrate(&t, &f, Quadrature::Simpson).unwrap();
            prop_assert!((v - exact).abs() <= 1e-9 * (1.0 + exact.abs()));
        }
    }
}
