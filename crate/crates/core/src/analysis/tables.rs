//! Aggregation of repeated bench runs into per-case averages.

use serde::{Deserialize, Serialize};

use crate::error::{RbsError, Result};

/// One measured bench run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchCaseRow {
    pub case_id: u32,
    pub omega_max_rpm: f64,
    pub braking_s: f64,
    pub free_spin_s: f64,
    pub energy_j: f64,
}

/// Per-case averages. The rounded fields use integer joules and one-decimal
/// seconds, half-up.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case_id: u32,
    pub omega_max_rpm: f64,
    pub braking_s: f64,
    pub avg_free_spin_s: f64,
    pub avg_energy_j: f64,
    pub mean_free_spin_s: f64,
    pub mean_energy_j: f64,
    pub runs: usize,
}

/// Rounds half away from zero at `decimals` places. A relative nudge absorbs
/// representation error such as 27.25 stored as 27.2499….
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    let scaled = x * scale;
    let nudged = scaled + scaled.signum() * scaled.abs().max(1.0) * 1e-12;
    nudged.round() / scale
}

/// Groups rows by case in first-appearance order and averages each group.
pub fn aggregate_cases(rows: &[BenchCaseRow]) -> Result<Vec<CaseSummary>> {
    if rows.is_empty() {
        return Err(RbsError::InvalidInput("no bench rows to aggregate".into()));
    }
    let mut groups: Vec<(u32, Vec<&BenchCaseRow>)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (name, v) in [
            ("omega_max_rpm", row.omega_max_rpm),
            ("braking_s", row.braking_s),
            ("free_spin_s", row.free_spin_s),
            ("energy_j", row.energy_j),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RbsError::InvalidInput(format!(
                    "row {} (case {}): {name} must be positive, got {v}",
                    i + 1,
                    row.case_id
                )));
            }
        }
        match groups.iter_mut().find(|(id, _)| *id == row.case_id) {
            Some((_, members)) => {
                let first = members[0];
                if first.omega_max_rpm != row.omega_max_rpm || first.braking_s != row.braking_s {
                    return Err(RbsError::InvalidInput(format!(
                        "row {}: case {} mixes operating points ({} rpm / {} s vs {} rpm / {} s)",
                        i + 1,
                        row.case_id,
                        row.omega_max_rpm,
                        row.braking_s,
                        first.omega_max_rpm,
                        first.braking_s
                    )));
                }
                members.push(row);
            }
            None => groups.push((row.case_id, vec![row])),
        }
    }

    Ok(groups
        .into_iter()
        .map(|(case_id, members)| {
            let n = members.len() as f64;
            let mean_free_spin_s = members.iter().map(|r| r.free_spin_s).sum::<f64>() / n;
            let mean_energy_j = members.iter().map(|r| r.energy_j).sum::<f64>() / n;
            CaseSummary {
                case_id,
                omega_max_rpm: members[0].omega_max_rpm,
                braking_s: members[0].braking_s,
                avg_free_spin_s: round_half_up(mean_free_spin_s, 1),
                avg_energy_j: round_half_up(mean_energy_j, 0),
                mean_free_spin_s,
                mean_energy_j,
                runs: members.len(),
            }
        })
        .collect())
}
