//! Comparison-study report: per-scenario records plus aggregate error
//! statistics with one-percentage-point histogram bins.

use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

/// Bins `[0,1), [1,2), ..., [19,20)` plus a final `[20, inf)` bin.
pub const HISTOGRAM_BINS: usize = 21;

/// Relative error in percent between an exact and an approximate objective
/// value. Undefined when the exact value is zero.
pub fn relative_error(exact: f64, approx: f64) -> Result<f64> {
    if exact == 0.0 {
        return Err(HarnessError::UndefinedRelativeError);
    }
    Ok(100.0 * (exact - approx).abs() / exact.abs())
}

pub fn histogram_bin(rel_err_pct: f64) -> usize {
    (rel_err_pct.max(0.0).floor() as usize).min(HISTOGRAM_BINS - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRecord {
    pub name: String,
    /// Global optimum from the joint lattice; absent when intractable.
    pub exact: Option<f64>,
    /// Objective at the final relaxed label distributions.
    pub relaxed: f64,
    /// Discrete cost after rounding.
    pub rounded: f64,
    pub rel_err_pct: Option<f64>,
    pub intractable: bool,
    /// Estimated lattice comparisons for an exact solve, in decimal.
    pub cost_estimate: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFailure {
    pub name: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub mean_rel_err_pct: Option<f64>,
    pub median_rel_err_pct: Option<f64>,
    pub bins: Vec<u64>,
    pub tractable_count: usize,
    pub intractable_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub scenarios: Vec<ScenarioRecord>,
    pub errors: Vec<ScenarioFailure>,
    pub aggregate: Aggregate,
}

impl SolveReport {
    pub fn assemble(mut scenarios: Vec<ScenarioRecord>, mut errors: Vec<ScenarioFailure>) -> Self {
        scenarios.sort_by(|a, b| a.name.cmp(&b.name));
        errors.sort_by(|a, b| a.name.cmp(&b.name));
        let mut rel_errors: Vec<f64> = scenarios.iter().filter_map(|r| r.rel_err_pct).collect();
        rel_errors.sort_by(f64::total_cmp);
        let mut bins = vec![0u64; HISTOGRAM_BINS];
        for &err in &rel_errors {
            bins[histogram_bin(err)] += 1;
        }
        let mean = if rel_errors.is_empty() {
            None
        } else {
            Some(rel_errors.iter().sum::<f64>() / rel_errors.len() as f64)
        };
        let median = if rel_errors.is_empty() {
            None
        } else {
            let mid = rel_errors.len() / 2;
            Some(if rel_errors.len() % 2 == 1 {
                rel_errors[mid]
            } else {
                0.5 * (rel_errors[mid - 1] + rel_errors[mid])
            })
        };
        let aggregate = Aggregate {
            mean_rel_err_pct: mean,
            median_rel_err_pct: median,
            bins,
            tractable_count: scenarios.iter().filter(|r| r.exact.is_some()).count(),
            intractable_count: scenarios.iter().filter(|r| r.intractable).count(),
        };
        Self {
            scenarios,
            errors,
            aggregate,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
