//! Least-squares polynomial fits of speed traces.
//!
//! The normal equations are assembled on a time axis shifted to the sample
//! midpoint and scaled to [−1, 1], solved by Gaussian elimination with
//! partial pivoting, and the coefficients are then expanded back to powers
//! of the original time.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};
use crate::model::trace::validate_abscissae;
use crate::model::SpeedTrace;

/// Highest degree accepted.
pub const MAX_DEGREE: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyFit {
    pub degree: usize,
    /// Ascending powers of t: c₀ + c₁t + c₂t² + …
    pub coefficients: Vec<f64>,
    /// Root-mean-square residual, same units as the data.
    pub residual_rms: f64,
}

impl PolyFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

pub fn fit_polynomial(trace: &SpeedTrace, degree: usize) -> Result<PolyFit> {
    fit_samples(trace.times(), trace.omegas(), degree)
}

pub fn fit_samples(t: &[f64], y: &[f64], degree: usize) -> Result<PolyFit> {
    if degree > MAX_DEGREE {
        return Err(RbsError::InvalidInput(format!(
            "polynomial degree {degree} exceeds the limit of {MAX_DEGREE}"
        )));
    }
    if t.len() != y.len() {
        return Err(RbsError::InvalidInput(format!("{} times but {} values", t.len(), y.len())));
    }
    if t.len() <= degree {
        return Err(RbsError::Rank(format!(
            "{} samples cannot determine a degree-{degree} polynomial",
            t.len()
        )));
    }
    if t.len() >= 2 {
        validate_abscissae(t, "fit data")?;
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(RbsError::InvalidInput("fit data must be finite".into()));
    }

    let n = degree + 1;
    let (lo, hi) = (t[0], t[t.len() - 1]);
    let mid = 0.5 * (lo + hi);
    let half = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };

    // normal equations in the scaled variable s = (t − mid)/half
    let mut gram = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    let mut powers = vec![0.0; 2 * n - 1];
    for (&ti, &yi) in t.iter().zip(y) {
        let s = (ti - mid) / half;
        let mut p = 1.0;
        for slot in powers.iter_mut() {
            *slot = p;
            p *= s;
        }
        for j in 0..n {
            rhs[j] += yi * powers[j];
            for k in 0..n {
                gram[j][k] += powers[j + k];
            }
        }
    }
    let scaled = solve(gram, rhs)?;

    // expand Σ a_k ((t − mid)/half)^k into ascending powers of t
    let mut coefficients = vec![0.0; n];
    for (k, a) in scaled.iter().enumerate() {
        let factor = a / half.powi(k as i32);
        let mut binom = 1.0;
        for j in 0..=k {
            // C(k, j) t^j (−mid)^(k−j)
            coefficients[j] += factor * binom * (-mid).powi((k - j) as i32);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }

    let scaled_eval = |ti: f64| {
        let s = (ti - mid) / half;
        scaled.iter().rev().fold(0.0, |acc, c| acc * s + c)
    };
    let sse: f64 = t.iter().zip(y).map(|(&ti, &yi)| (yi - scaled_eval(ti)).powi(2)).sum();
    Ok(PolyFit {
        degree,
        coefficients,
        residual_rms: (sse / t.len() as f64).sqrt(),
    })
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col].abs() <= 1e-13 * scale {
            return Err(RbsError::Rank("normal equations are singular".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let m = a[row][col] / a[col][col];
            if m == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Ok(x)
}
