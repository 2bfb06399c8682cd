//! Full-factorial parameter sweeps over scenario fields.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::drivetrain::{simulate, Simulation};
use crate::error::{RbsError, Result};
use crate::model::EnergyLedger;

use super::scenario::Scenario;

pub const DEFAULT_SWEEP_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    /// Dotted path into the scenario JSON, e.g. `gear.ratio`.
    pub path: String,
    pub values: Vec<f64>,
}

/// Quantity the sweep ranks cells by.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Kinetic energy the flywheel gained from the shaft, ½I(ω_peak² − ω_0²).
    #[default]
    NetRecovered,
    /// Electrical energy accepted by the charge controller.
    DeliveredElectrical,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::NetRecovered => "net_recovered",
            Objective::DeliveredElectrical => "delivered_electrical",
        }
    }

    pub fn evaluate(self, sim: &Simulation) -> f64 {
        match self {
            Objective::NetRecovered => sim.captured_energy(),
            Objective::DeliveredElectrical => sim.ledger.delivered_electrical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axes: Vec<SweepAxis>,
    #[serde(default)]
    pub objective: Objective,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Largest grid the sweep will run.
    pub cap: usize,
    /// Worker threads; 1 runs sequentially.
    pub threads: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SWEEP_CAP,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Position in row-major enumeration order (last axis fastest).
    pub cell: usize,
    /// One value per axis, in axis order.
    pub values: Vec<f64>,
    pub objective: f64,
    pub ledger: EnergyLedger,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(RbsError::Config("sweep needs at least one axis".into()));
        }
        for axis in &self.axes {
            if axis.values.is_empty() {
                return Err(RbsError::Config(format!("sweep axis {:?} has no values", axis.path)));
            }
            if let Some(v) = axis.values.iter().find(|v| !v.is_finite()) {
                return Err(RbsError::Config(format!(
                    "sweep axis {:?} has non-finite value {v}",
                    axis.path
                )));
            }
        }
        Ok(())
    }

    /// Grid size, saturating on overflow.
    pub fn cell_count(&self) -> usize {
        self.axes
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
            .unwrap_or(usize::MAX)
    }

    /// Axis values of cell `index` in row-major order.
    pub fn cell_values(&self, mut index: usize) -> Vec<f64> {
        let mut values = vec![0.0; self.axes.len()];
        for (slot, axis) in values.iter_mut().zip(&self.axes).rev() {
            let n = axis.values.len();
            *slot = axis.values[index % n];
            index /= n;
        }
        values
    }

    /// The base scenario with one cell's values substituted.
    pub fn cell_scenario(&self, base: &Scenario, values: &[f64]) -> Result<Scenario> {
        base.with_overrides(
            self.axes
                .iter()
                .zip(values)
                .map(|(axis, &v)| (axis.path.as_str(), json_number(v))),
        )
    }
}

/// Integral values become JSON integers so they also fit integer fields.
fn json_number(v: f64) -> Value {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        Value::from(v as i64)
    } else {
        Value::from(v)
    }
}

fn evaluate_cell(spec: &SweepSpec, base: &Scenario, cell: usize) -> Result<SweepRow> {
    let values = spec.cell_values(cell);
    let scenario = spec.cell_scenario(base, &values)?;
    let sim = simulate(&scenario)?;
    Ok(SweepRow {
        cell,
        values,
        objective: spec.objective.evaluate(&sim),
        ledger: sim.ledger,
    })
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Runs every cell of the grid and ranks the rows by objective, highest
/// first, ties broken by ascending axis values.
///
/// Cells are independent simulations; with `threads > 1` they are spread
/// over scoped worker threads and reassembled in cell order, so the output
/// does not depend on scheduling.
pub fn run_sweep(spec: &SweepSpec, base: &Scenario, options: SweepOptions) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let cells = spec.cell_count();
    if cells > options.cap {
        return Err(RbsError::GridTooLarge {
            cells,
            cap: options.cap,
        });
    }
    let threads = options.threads.clamp(1, cells);

    let results: Vec<Result<SweepRow>> = if threads == 1 {
        (0..cells).map(|cell| evaluate_cell(spec, base, cell)).collect()
    } else {
        let mut slots: Vec<Option<Result<SweepRow>>> = (0..cells).map(|_| None).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|worker| {
                    scope.spawn(move || {
                        (worker..cells)
                            .step_by(threads)
                            .map(|cell| (cell, evaluate_cell(spec, base, cell)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                for (cell, row) in handle.join().expect("sweep worker panicked") {
                    slots[cell] = Some(row);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every cell evaluated")).collect()
    };

    let mut rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        b.objective
            .total_cmp(&a.objective)
            .then_with(|| lexicographic(&a.values, &b.values))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(axes: &[(&str, &[f64])]) -> SweepSpec {
        SweepSpec {
            axes: axes
                .iter()
                .map(|(p, v)| SweepAxis {
                    path: p.to_string(),
                    values: v.to_vec(),
                })
                .collect(),
            objective: Objective::NetRecovered,
        }
    }

    #[test]
    fn enumerates_row_major() {
        let s = spec(&[("a", &[1.0, 2.0]), ("b", &[10.0, 20.0, 30.0])]);
        assert_eq!(s.cell_count(), 6);
        assert_eq!(s.cell_values(0), vec![1.0, 10.0]);
        assert_eq!(s.cell_values(1), vec![1.0, 20.0]);
        assert_eq!(s.cell_values(3), vec![2.0, 10.0]);
        assert_eq!(s.cell_values(5), vec![2.0, 30.0]);
    }

    #[test]
    fn rejects_empty_axes() {
        assert!(spec(&[]).validate().is_err());
        assert!(spec(&[("a", &[])]).validate().is_err());
        assert!(spec(&[("a", &[f64::NAN])]).validate().is_err());
    }

    #[test]
    fn integral_values_become_integers() {
        assert_eq!(json_number(4.0), Value::from(4));
        assert_eq!(json_number(0.5), Value::from(0.5));
    }

    #[test]
    fn overflowing_grid_saturates() {
        let big: Vec<f64> = (0..100_000).map(|i| i as f64).collect();
        let s = spec(&[("a", &big), ("b", &big), ("c", &big), ("d", &big)]);
        assert_eq!(s.cell_count(), usize::MAX);
    }
}
