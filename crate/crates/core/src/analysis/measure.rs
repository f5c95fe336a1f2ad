use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::butterfly::ComplexSample;
use crate::error::{Error, Result};
use crate::fft::{dft_oracle, make_plan};
use crate::fmt::g17;
use crate::precision::Precision;
use crate::rng::SampleRng;
use crate::twiddle::Strategy;

use super::CsvRecord;

/// `||x - y||_2 / ||y||_2`, with `y` the reference.
///
/// Returns `+inf` when `x` holds a non-finite value.
pub fn relative_l2_error(x: &[ComplexSample], y: &[ComplexSample]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            found: x.len(),
        });
    }
    let reference: f64 = y.iter().map(|v| v.norm_sqr()).sum();
    if reference == 0.0 {
        return Err(Error::ZeroReference);
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Ok(f64::INFINITY);
    }
    let diff: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let (dr, di) = (a.re - b.re, a.im - b.im);
            dr * dr + di * di
        })
        .sum();
    Ok((diff / reference).sqrt())
}

/// What a measurement compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `inverse(forward(x))` against the original `f64` input.
    Roundtrip,
    /// `forward(x)` against the direct DFT of the ingested input.
    ForwardVsOracle,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Roundtrip => "roundtrip",
            Metric::ForwardVsOracle => "forward_vs_oracle",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "roundtrip" => Ok(Metric::Roundtrip),
            "forward" | "forward_vs_oracle" | "oracle" => Ok(Metric::ForwardVsOracle),
            _ => Err(Error::UnknownMetric(s.to_string())),
        }
    }
}

/// Measured error statistics for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub n: usize,
    pub strategy: Strategy,
    pub precision: Precision,
    pub metric: Metric,
    pub trials: usize,
    pub seed: u64,
    /// Median over finite trials; NaN when every trial was non-finite.
    pub rel_l2_median: f64,
    /// Maximum over finite trials; NaN when every trial was non-finite.
    pub rel_l2_max: f64,
    pub nonfinite_trials: usize,
}

impl CsvRecord for ErrorReport {
    fn csv_header() -> &'static str {
        "n,strategy,precision,metric,trials,seed,rel_l2_median,rel_l2_max,nonfinite_trials"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.strategy,
            self.precision,
            self.metric,
            self.trials,
            self.seed,
            g17(self.rel_l2_median),
            g17(self.rel_l2_max),
            self.nonfinite_trials
        )
    }
}

/// Median of a sorted, non-empty slice.
fn median(sorted: &[f64]) -> f64 {
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

/// Per-trial relative L2 errors, in trial order.
///
/// Inputs are drawn up front from one seeded stream (components uniform in
/// `[-1, 1)`), so results do not depend on how trials are scheduled.
pub fn trial_errors(
    n: usize,
    strategy: Strategy,
    precision: Precision,
    metric: Metric,
    trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let plan = make_plan(n, strategy, precision)?;
    let mut rng = SampleRng::new(seed);
    let inputs: Vec<Vec<ComplexSample>> = (0..trials).map(|_| rng.complex_vec(n)).collect();
    inputs
        .par_iter()
        .map(|x| match metric {
            Metric::Roundtrip => {
                let back = plan.inverse(&plan.forward(x)?)?;
                relative_l2_error(&back, x)
            }
            Metric::ForwardVsOracle => {
                let ingested: Vec<_> = x.iter().map(|v| v.map(|c| precision.round(c))).collect();
                let out = plan.forward(&ingested)?;
                relative_l2_error(&out, &dft_oracle(&ingested))
            }
        })
        .collect()
}

/// Run `trials` seeded transforms and summarize their relative L2 errors.
pub fn measure_error(
    n: usize,
    strategy: Strategy,
    precision: Precision,
    metric: Metric,
    trials: usize,
    seed: u64,
) -> Result<ErrorReport> {
    let errors = trial_errors(n, strategy, precision, metric, trials, seed)?;
    let mut finite: Vec<f64> = errors.iter().copied().filter(|e| e.is_finite()).collect();
    finite.sort_by(f64::total_cmp);
    let (rel_l2_median, rel_l2_max) = match finite.last() {
        Some(&max) => (median(&finite), max),
        None => (f64::NAN, f64::NAN),
    };
    Ok(ErrorReport {
        n,
        strategy,
        precision,
        metric,
        trials,
        seed,
        rel_l2_median,
        rel_l2_max,
        nonfinite_trials: trials - finite.len(),
    })
}
