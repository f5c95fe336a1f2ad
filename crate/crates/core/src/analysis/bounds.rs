use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fmt::g17;
use crate::precision::Precision;
use crate::twiddle::{validate_size, Strategy, TwiddleTable};

use super::CsvRecord;

/// Per-butterfly error bound `t_max * eps`, with the structural constant
/// normalized to 1.
pub fn per_butterfly_bound(t_max: f64, eps: f64) -> f64 {
    t_max * eps
}

/// Worst-case relative error after `m` passes, `(1 + t_max * eps)^m - 1`,
/// evaluated in its exact power form.
pub fn cumulative_bound(t_max: f64, eps: f64, m: u32) -> f64 {
    // ln_1p/exp_m1 keeps the small-bound case free of cancellation.
    (m as f64 * (t_max * eps).ln_1p()).exp_m1()
}

/// Analytic bounds for one strategy at one size and precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub strategy: Strategy,
    pub t_max: f64,
    pub singular_count: usize,
    pub per_butterfly_bound: f64,
    pub cumulative_bound: f64,
    /// Baseline (Linzer-Feig) cumulative bound over this row's.
    pub improvement_vs_baseline: f64,
    /// `t_max * eps >= 1`: a single butterfly can wipe out every significand bit.
    pub divergent: bool,
}

impl CsvRecord for BoundReport {
    fn csv_header() -> &'static str {
        "strategy,t_max,singular_count,per_butterfly_bound,cumulative_bound,improvement_vs_baseline,divergent"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.strategy,
            g17(self.t_max),
            self.singular_count,
            g17(self.per_butterfly_bound),
            g17(self.cumulative_bound),
            g17(self.improvement_vs_baseline),
            self.divergent
        )
    }
}

fn improvement(baseline: f64, own: f64) -> f64 {
    if own == 0.0 {
        if baseline == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        baseline / own
    }
}

fn bound_rows(n: usize, precision: Precision, strategies: &[Strategy]) -> Result<Vec<BoundReport>> {
    validate_size(n)?;
    let eps = precision.machine_epsilon();
    let m = n.trailing_zeros();
    let baseline = {
        let stats = TwiddleTable::new(n, Strategy::LinzerFeig)?.stats();
        cumulative_bound(stats.t_max, eps, m)
    };
    strategies
        .iter()
        .map(|&strategy| {
            let stats = TwiddleTable::new(n, strategy)?.stats();
            let per = per_butterfly_bound(stats.t_max, eps);
            let cumulative = cumulative_bound(stats.t_max, eps, m);
            Ok(BoundReport {
                strategy,
                t_max: stats.t_max,
                singular_count: stats.singular_count,
                per_butterfly_bound: per,
                cumulative_bound: cumulative,
                improvement_vs_baseline: improvement(baseline, cumulative),
                divergent: per >= 1.0,
            })
        })
        .collect()
}

/// Ratio bounds, singularity counts and per-butterfly bounds for the three
/// factorized strategies at FP16.
pub fn reproduce_table1(n: usize) -> Result<Vec<BoundReport>> {
    reproduce_table1_at(n, Precision::Fp16)
}

pub fn reproduce_table1_at(n: usize, precision: Precision) -> Result<Vec<BoundReport>> {
    bound_rows(n, precision, &Strategy::FMA)
}

/// Cumulative bounds over `log2(n)` passes for Linzer-Feig and dual-select at
/// FP16, with the improvement factor of dual-select over Linzer-Feig.
pub fn reproduce_table2(n: usize) -> Result<Vec<BoundReport>> {
    reproduce_table2_at(n, Precision::Fp16)
}

pub fn reproduce_table2_at(n: usize, precision: Precision) -> Result<Vec<BoundReport>> {
    bound_rows(n, precision, &[Strategy::LinzerFeig, Strategy::DualSelect])
}
