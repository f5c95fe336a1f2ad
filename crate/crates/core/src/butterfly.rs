//! Radix-2 butterfly kernels: `A = a + W b`, `B = a - W b`.
//!
//! All arithmetic goes through an [`ArithmeticContext`], so results carry the
//! context's rounding and the context's counters record the exact operation
//! mix. Negating an operand is a sign flip, not an operation.

use serde::{Deserialize, Serialize};

use crate::precision::ArithmeticContext;
use crate::twiddle::{Strategy, TwiddleEntry, TwiddlePath};

/// A complex value carried in `f64`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexSample {
    pub re: f64,
    pub im: f64,
}

impl ComplexSample {
    pub const ZERO: ComplexSample = ComplexSample { re: 0.0, im: 0.0 };

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// `max(|re|, |im|)`.
    pub fn max_abs(self) -> f64 {
        self.re.abs().max(self.im.abs())
    }

    pub fn map(self, mut f: impl FnMut(f64) -> f64) -> Self {
        Self::new(f(self.re), f(self.im))
    }
}

impl From<(f64, f64)> for ComplexSample {
    fn from((re, im): (f64, f64)) -> Self {
        Self::new(re, im)
    }
}

/// Ten-operation butterfly: 4 multiplications, 6 additions or subtractions.
#[inline]
pub fn butterfly_standard(
    a: ComplexSample,
    b: ComplexSample,
    w: &TwiddleEntry,
    ctx: &mut ArithmeticContext,
) -> (ComplexSample, ComplexSample) {
    let rr = ctx.mul(w.omega_r, b.re);
    let ii = ctx.mul(w.omega_i, b.im);
    let ir = ctx.mul(w.omega_i, b.re);
    let ri = ctx.mul(w.omega_r, b.im);
    let wb_re = ctx.sub(rr, ii);
    let wb_im = ctx.add(ir, ri);
    (
        ComplexSample::new(ctx.add(a.re, wb_re), ctx.add(a.im, wb_im)),
        ComplexSample::new(ctx.sub(a.re, wb_re), ctx.sub(a.im, wb_im)),
    )
}

/// Six-FMA butterfly with the sine outer multiplier (`t = cot(theta)`).
///
/// `Re(Wb) = -w_i (b_i - t b_r)` and `Im(Wb) = w_i (b_r + t b_i)`.
#[inline]
pub fn butterfly_linzer_feig(
    a: ComplexSample,
    b: ComplexSample,
    w: &TwiddleEntry,
    ctx: &mut ArithmeticContext,
) -> (ComplexSample, ComplexSample) {
    debug_assert_ne!(w.path, Some(TwiddlePath::Cos));
    let t = w.ratio;
    let m = w.multiplier;
    let s1 = ctx.fma(-t, b.re, b.im);
    let s2 = ctx.fma(t, b.im, b.re);
    (
        ComplexSample::new(ctx.fma(-s1, m, a.re), ctx.fma(s2, m, a.im)),
        ComplexSample::new(ctx.fma(s1, m, a.re), ctx.fma(-s2, m, a.im)),
    )
}

/// Six-FMA butterfly with the cosine outer multiplier (`t = tan(theta)`).
///
/// `Re(Wb) = w_r (b_r - t b_i)` and `Im(Wb) = w_r (t b_r + b_i)`.
#[inline]
pub fn butterfly_cosine(
    a: ComplexSample,
    b: ComplexSample,
    w: &TwiddleEntry,
    ctx: &mut ArithmeticContext,
) -> (ComplexSample, ComplexSample) {
    debug_assert_ne!(w.path, Some(TwiddlePath::Sin));
    let t = w.ratio;
    let m = w.multiplier;
    let s1 = ctx.fma(-t, b.im, b.re);
    let s2 = ctx.fma(t, b.re, b.im);
    (
        ComplexSample::new(ctx.fma(s1, m, a.re), ctx.fma(s2, m, a.im)),
        ComplexSample::new(ctx.fma(-s1, m, a.re), ctx.fma(-s2, m, a.im)),
    )
}

/// Branch on the entry's path flag; six FMAs either way.
#[inline]
pub fn butterfly_dual(
    a: ComplexSample,
    b: ComplexSample,
    w: &TwiddleEntry,
    ctx: &mut ArithmeticContext,
) -> (ComplexSample, ComplexSample) {
    match w.path {
        Some(TwiddlePath::Sin) => butterfly_linzer_feig(a, b, w, ctx),
        _ => butterfly_cosine(a, b, w, ctx),
    }
}

/// Run the kernel that belongs to `strategy`.
#[inline]
pub fn butterfly(
    strategy: Strategy,
    a: ComplexSample,
    b: ComplexSample,
    w: &TwiddleEntry,
    ctx: &mut ArithmeticContext,
) -> (ComplexSample, ComplexSample) {
    match strategy {
        Strategy::Standard => butterfly_standard(a, b, w, ctx),
        Strategy::LinzerFeig => butterfly_linzer_feig(a, b, w, ctx),
        Strategy::Cosine => butterfly_cosine(a, b, w, ctx),
        Strategy::DualSelect => butterfly_dual(a, b, w, ctx),
    }
}
