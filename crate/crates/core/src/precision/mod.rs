//! Rounded arithmetic at FP16, FP32 and FP64.
//!
//! Every value is carried in an `f64` and re-rounded into the working format
//! after each operation. FP16 and FP32 products of representable operands are
//! exact in the carrier; sums are made single-rounding with a two-sum error
//! term folded into a round-to-odd sticky bit before the final rounding.

pub mod binary16;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Working floating-point format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Precision {
    #[serde(rename = "FP16")]
    Fp16,
    #[serde(rename = "FP32")]
    Fp32,
    #[serde(rename = "FP64")]
    Fp64,
}

impl Precision {
    pub const ALL: [Precision; 3] = [Precision::Fp16, Precision::Fp32, Precision::Fp64];

    /// Unit roundoff: half the gap between 1 and the next representable value.
    pub fn machine_epsilon(self) -> f64 {
        match self {
            Precision::Fp16 => (-11f64).exp2(),
            Precision::Fp32 => (-24f64).exp2(),
            Precision::Fp64 => (-53f64).exp2(),
        }
    }

    pub fn max_finite(self) -> f64 {
        match self {
            Precision::Fp16 => binary16::F16_MAX,
            Precision::Fp32 => f32::MAX as f64,
            Precision::Fp64 => f64::MAX,
        }
    }

    /// Significand width including the implicit bit.
    pub fn significand_bits(self) -> u32 {
        match self {
            Precision::Fp16 => 11,
            Precision::Fp32 => 24,
            Precision::Fp64 => 53,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Precision::Fp16 => "FP16",
            Precision::Fp32 => "FP32",
            Precision::Fp64 => "FP64",
        }
    }

    #[inline]
    pub fn round(self, x: f64) -> f64 {
        round_to(x, self)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fp16" | "f16" | "half" | "binary16" => Ok(Precision::Fp16),
            "fp32" | "f32" | "single" | "binary32" => Ok(Precision::Fp32),
            "fp64" | "f64" | "double" | "binary64" => Ok(Precision::Fp64),
            _ => Err(Error::UnknownPrecision(s.to_string())),
        }
    }
}

/// Round `x` to the nearest value of `p` (ties to even), widened back to `f64`.
///
/// Overflow saturates to a signed infinity, subnormals are kept and NaN stays NaN.
#[inline]
pub fn round_to(x: f64, p: Precision) -> f64 {
    match p {
        Precision::Fp16 => binary16::round(x),
        Precision::Fp32 => x as f32 as f64,
        Precision::Fp64 => x,
    }
}

/// Correctly rounded `x + y` into `p`, for `x` and `y` exact in the carrier.
#[inline]
fn sum_rounded(x: f64, y: f64, p: Precision) -> f64 {
    let s = x + y;
    if p == Precision::Fp64 || !s.is_finite() {
        return round_to(s, p);
    }
    // Two-sum: `err` is the exact residual x + y - s.
    let v = s - x;
    let err = (x - (s - v)) + (y - v);
    // Round to odd in the carrier so the final rounding sees the sticky bit.
    let s = if err != 0.0 && s.to_bits() & 1 == 0 {
        if (err > 0.0) == (s > 0.0) {
            f64::from_bits(s.to_bits() + 1)
        } else {
            f64::from_bits(s.to_bits() - 1)
        }
    } else {
        s
    };
    round_to(s, p)
}

/// Arithmetic-operation tallies for one context.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounter {
    pub fma_count: u64,
    pub add_count: u64,
    pub mul_count: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.fma_count + self.add_count + self.mul_count
    }
}

/// Rounded arithmetic provider with operation counters.
///
/// Sign flips are not arithmetic and are not counted; callers negate operands
/// directly.
#[derive(Debug, Clone)]
pub struct ArithmeticContext {
    precision: Precision,
    counters: OpCounter,
}

impl ArithmeticContext {
    pub fn new(precision: Precision) -> Self {
        Self {
            precision,
            counters: OpCounter::default(),
        }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn counters(&self) -> OpCounter {
        self.counters
    }

    pub fn reset(&mut self) {
        self.counters = OpCounter::default();
    }

    #[inline]
    pub fn round(&self, x: f64) -> f64 {
        round_to(x, self.precision)
    }

    /// `a * b + c` with a single rounding.
    #[inline]
    pub fn fma(&mut self, a: f64, b: f64, c: f64) -> f64 {
        self.counters.fma_count += 1;
        match self.precision {
            Precision::Fp64 => a.mul_add(b, c),
            // Products of FP16/FP32 operands are exact in the carrier.
            p => sum_rounded(a * b, c, p),
        }
    }

    #[inline]
    pub fn add(&mut self, a: f64, b: f64) -> f64 {
        self.counters.add_count += 1;
        sum_rounded(a, b, self.precision)
    }

    /// Counted as an addition.
    #[inline]
    pub fn sub(&mut self, a: f64, b: f64) -> f64 {
        self.counters.add_count += 1;
        sum_rounded(a, -b, self.precision)
    }

    #[inline]
    pub fn mul(&mut self, a: f64, b: f64) -> f64 {
        self.counters.mul_count += 1;
        round_to(a * b, self.precision)
    }
}
