//! Self-checks run by `dualfft verify`.

use crate::error::Result;
use crate::fft::{dft_oracle, linzer_feig_clamp, FftPlan};
use crate::precision::Precision;
use crate::rng::SampleRng;
use crate::twiddle::{validate_size, Strategy, TwiddleTable, DEFAULT_CLAMP_EPS};

use super::relative_l2_error;

/// Largest size the O(n^2) oracle check runs at.
pub const ORACLE_CHECK_MAX_N: usize = 4096;

/// Relative L2 tolerance for FP64 forward transforms against the oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-11;

/// Deliberate table corruption, used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negate every dual-select ratio.
    FlipRatioSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: String) -> Self {
        Self { name, passed: true, detail }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Self { name, passed: false, detail }
    }
}

fn sizes(max_n: usize) -> impl Iterator<Item = usize> {
    (1..usize::BITS).map(|b| 1usize << b).take_while(move |&n| n <= max_n)
}

fn table(n: usize, strategy: Strategy, fault: Option<Fault>) -> Result<TwiddleTable> {
    table_with_clamp(n, strategy, fault, DEFAULT_CLAMP_EPS)
}

fn table_with_clamp(
    n: usize,
    strategy: Strategy,
    fault: Option<Fault>,
    clamp_eps: f64,
) -> Result<TwiddleTable> {
    let mut t = TwiddleTable::with_clamp(n, strategy, clamp_eps)?;
    if strategy == Strategy::DualSelect && fault == Some(Fault::FlipRatioSign) {
        for e in t.entries_mut() {
            e.ratio = -e.ratio;
        }
    }
    Ok(t)
}

fn ulps(x: f64, reference: f64) -> f64 {
    let ulp = if reference == 0.0 {
        f64::from_bits(1)
    } else {
        f64::from_bits(reference.abs().to_bits() + 1) - reference.abs()
    };
    (x - reference).abs() / ulp
}

fn check_ratio_bound(max_n: usize, fault: Option<Fault>) -> Result<CheckOutcome> {
    const NAME: &str = "dual-select ratio bound |t| <= 1";
    let mut entries = 0usize;
    for n in sizes(max_n) {
        for (k, e) in table(n, Strategy::DualSelect, fault)?.entries().iter().enumerate() {
            if e.ratio.is_nan() || e.ratio.abs() > 1.0 || e.clamped {
                return Ok(CheckOutcome::fail(
                    NAME,
                    format!("n={n} strategy=DualSelect k={k} ratio={}", e.ratio),
                ));
            }
            entries += 1;
        }
    }
    Ok(CheckOutcome::pass(NAME, format!("{entries} entries, n <= {max_n}")))
}

fn check_reconstruction(max_n: usize, fault: Option<Fault>) -> Result<CheckOutcome> {
    const NAME: &str = "multiplier * ratio reconstructs the twiddle";
    let mut entries = 0usize;
    for strategy in Strategy::FMA {
        for n in sizes(max_n) {
            for (k, e) in table(n, strategy, fault)?.entries().iter().enumerate() {
                if e.clamped {
                    continue;
                }
                let rebuilt = e.multiplier * e.ratio;
                if e.multiplier != e.outer_component() || ulps(rebuilt, e.complement()) > 2.0 {
                    return Ok(CheckOutcome::fail(
                        NAME,
                        format!("n={n} strategy={strategy} k={k} rebuilt={rebuilt} expected={}", e.complement()),
                    ));
                }
                entries += 1;
            }
        }
    }
    Ok(CheckOutcome::pass(NAME, format!("{entries} entries")))
}

fn check_oracle(max_n: usize, fault: Option<Fault>) -> Result<CheckOutcome> {
    const NAME: &str = "FP64 forward matches DFT oracle";
    let limit = max_n.min(ORACLE_CHECK_MAX_N);
    let mut rng = SampleRng::new(0x5EED);
    let mut worst = 0.0f64;
    for n in sizes(limit) {
        let x = rng.complex_vec(n);
        let reference = dft_oracle(&x);
        for strategy in Strategy::ALL {
            let clamp = linzer_feig_clamp(Precision::Fp64);
            let plan = FftPlan::from_table(table_with_clamp(n, strategy, fault, clamp)?, Precision::Fp64)?;
            let err = relative_l2_error(&plan.forward(&x)?, &reference)?;
            if err.is_nan() || err >= ORACLE_TOLERANCE {
                return Ok(CheckOutcome::fail(
                    NAME,
                    format!("n={n} strategy={strategy} rel_l2={err:e} tolerance={ORACLE_TOLERANCE:e}"),
                ));
            }
            worst = worst.max(err);
        }
    }
    Ok(CheckOutcome::pass(NAME, format!("n <= {limit}, worst rel_l2={worst:e}")))
}

fn check_op_counts(max_n: usize, fault: Option<Fault>) -> Result<CheckOutcome> {
    const NAME: &str = "operation counts per forward transform";
    for n in sizes(max_n) {
        let x = vec![Default::default(); n];
        for strategy in Strategy::ALL {
            let plan = FftPlan::from_table(table(n, strategy, fault)?, Precision::Fp32)?;
            let mut ctx = plan.new_context();
            plan.forward_with(&x, &mut ctx)?;
            let got = ctx.counters();
            let b = plan.butterfly_count();
            let expected = if strategy.is_fma() { (6 * b, 0, 0) } else { (0, 6 * b, 4 * b) };
            if (got.fma_count, got.add_count, got.mul_count) != expected {
                return Ok(CheckOutcome::fail(
                    NAME,
                    format!("n={n} strategy={strategy} counted={got:?} expected (fma, add, mul)={expected:?}"),
                ));
            }
        }
    }
    Ok(CheckOutcome::pass(NAME, format!("6 FMAs per factorized butterfly, n <= {max_n}")))
}

/// Run every check up to `max_n` and report one outcome per check.
pub fn run_checks(max_n: usize, fault: Option<Fault>) -> Result<Vec<CheckOutcome>> {
    validate_size(max_n)?;
    Ok(vec![
        check_ratio_bound(max_n, fault)?,
        check_reconstruction(max_n, fault)?,
        check_oracle(max_n, fault)?,
        check_op_counts(max_n, fault)?,
    ])
}
