//! Out-of-place radix-2 Stockham FFT, decimation in time.
//!
//! Pass `t` (half-block `l = 2^t`, stride `s = n / 2l`) reads
//! `a = x[q + 2js]`, `b = x[q + (2j+1)s]` and writes `a + W b` to
//! `y[q + js]` and `a - W b` to `y[q + (j+l)s]`, with `W = table[j s]`. The
//! two buffers swap roles after every pass; input and output are in natural
//! order.

mod oracle;

pub use oracle::dft_oracle;

use crate::butterfly::{butterfly, ComplexSample};
use crate::error::{Error, Result};
use crate::precision::{ArithmeticContext, Precision};
use crate::twiddle::{validate_size, Strategy, TwiddleTable};

/// Largest size accepted by [`FftPlan`].
pub const MAX_PLAN_SIZE: usize = 1 << 24;

/// Clamp used for the Linzer-Feig `k = 0` entry when planning at `precision`.
///
/// The clamp is the larger of the unit roundoff, so the perturbed twiddle
/// `1 - j eps` is no worse than one rounding, and the power of two nearest
/// `1 / sqrt(max_finite)`, so `b / eps` keeps about `sqrt(max_finite)` of
/// headroom before overflowing. This gives `2^-53` in FP64, `2^-24` in FP32
/// and `2^-8` in FP16.
pub fn linzer_feig_clamp(precision: Precision) -> f64 {
    let headroom = -(precision.max_finite().log2().ceil() / 2.0).floor();
    precision.machine_epsilon().max(headroom.exp2())
}

/// Immutable execution recipe for one size, strategy and precision.
#[derive(Debug, Clone)]
pub struct FftPlan {
    n: usize,
    log2n: u32,
    precision: Precision,
    table: TwiddleTable,
}

/// Build a plan with the precision's default Linzer-Feig clamp.
pub fn make_plan(n: usize, strategy: Strategy, precision: Precision) -> Result<FftPlan> {
    FftPlan::new(n, strategy, precision)
}

impl FftPlan {
    pub fn new(n: usize, strategy: Strategy, precision: Precision) -> Result<Self> {
        Self::with_clamp(n, strategy, precision, linzer_feig_clamp(precision))
    }

    pub fn with_clamp(
        n: usize,
        strategy: Strategy,
        precision: Precision,
        clamp_eps: f64,
    ) -> Result<Self> {
        check_plan_size(n)?;
        Self::from_table(TwiddleTable::with_clamp(n, strategy, clamp_eps)?, precision)
    }

    /// Adopt an `f64` table, rounding every stored scalar once into `precision`.
    pub fn from_table(mut table: TwiddleTable, precision: Precision) -> Result<Self> {
        let n = table.n();
        check_plan_size(n)?;
        table.map_scalars(|x| precision.round(x));
        Ok(Self {
            n,
            log2n: n.trailing_zeros(),
            precision,
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of passes, `log2(n)`.
    pub fn passes(&self) -> u32 {
        self.log2n
    }

    pub fn strategy(&self) -> Strategy {
        self.table.strategy()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Twiddle table as stored, already rounded to the plan's precision.
    pub fn table(&self) -> &TwiddleTable {
        &self.table
    }

    /// Butterflies executed by one transform: `(n / 2) log2(n)`.
    pub fn butterfly_count(&self) -> u64 {
        (self.n as u64 / 2) * self.log2n as u64
    }

    pub fn new_context(&self) -> ArithmeticContext {
        ArithmeticContext::new(self.precision)
    }

    /// Unnormalized forward transform with a fresh context.
    pub fn forward(&self, input: &[ComplexSample]) -> Result<Vec<ComplexSample>> {
        self.forward_with(input, &mut self.new_context())
    }

    /// Forward transform counting every operation in `ctx`.
    ///
    /// Input is rounded into the plan's precision on ingest (not counted).
    pub fn forward_with(
        &self,
        input: &[ComplexSample],
        ctx: &mut ArithmeticContext,
    ) -> Result<Vec<ComplexSample>> {
        self.check_len(input.len())?;
        debug_assert_eq!(ctx.precision(), self.precision);
        let p = self.precision;
        let mut src: Vec<ComplexSample> = input.iter().map(|x| x.map(|v| p.round(v))).collect();
        self.run_passes(&mut src, ctx);
        Ok(src)
    }

    /// Inverse transform with a fresh context.
    pub fn inverse(&self, spectrum: &[ComplexSample]) -> Result<Vec<ComplexSample>> {
        self.inverse_with(spectrum, &mut self.new_context())
    }

    /// Conjugate, forward, conjugate, then one rounded multiplication by `1/n`
    /// per component.
    pub fn inverse_with(
        &self,
        spectrum: &[ComplexSample],
        ctx: &mut ArithmeticContext,
    ) -> Result<Vec<ComplexSample>> {
        self.check_len(spectrum.len())?;
        let p = self.precision;
        let mut buf: Vec<ComplexSample> =
            spectrum.iter().map(|x| x.conj().map(|v| p.round(v))).collect();
        self.run_passes(&mut buf, ctx);
        let scale = p.round(1.0 / self.n as f64);
        for x in &mut buf {
            let re = ctx.mul(x.re, scale);
            let im = ctx.mul(-x.im, scale);
            *x = ComplexSample::new(re, im);
        }
        Ok(buf)
    }

    fn run_passes(&self, data: &mut Vec<ComplexSample>, ctx: &mut ArithmeticContext) {
        let n = self.n;
        let strategy = self.table.strategy();
        let entries = self.table.entries();
        let mut scratch = vec![ComplexSample::ZERO; n];
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for j in 0..half {
                let w = &entries[j * stride];
                for q in 0..stride {
                    let a = data[q + stride * 2 * j];
                    let b = data[q + stride * (2 * j + 1)];
                    let (sum, diff) = butterfly(strategy, a, b, w, ctx);
                    scratch[q + stride * j] = sum;
                    scratch[q + stride * (j + half)] = diff;
                }
            }
            std::mem::swap(data, &mut scratch);
            half *= 2;
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                found: len,
            })
        }
    }
}

fn check_plan_size(n: usize) -> Result<()> {
    validate_size(n)?;
    if n > MAX_PLAN_SIZE {
        return Err(Error::SizeTooLarge(n));
    }
    Ok(())
}
