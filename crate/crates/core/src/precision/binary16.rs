//! IEEE 754 binary16 encoding straight from `f64`.
//!
//! Rounding goes directly from the 53-bit significand to the 11-bit one, so
//! there is no intermediate `f32` step and no double rounding.

const F64_MANT_BITS: u32 = 52;
const F64_EXP_BIAS: i32 = 1023;
const F16_MANT_BITS: u32 = 10;
const F16_EXP_BIAS: i32 = 15;

pub const F16_INFINITY: u16 = 0x7C00;
pub const F16_NAN: u16 = 0x7E00;

/// Largest finite binary16 value.
pub const F16_MAX: f64 = 65504.0;

/// Round `x` to the nearest binary16 value (ties to even) and return its bits.
pub fn f64_to_bits(x: f64) -> u16 {
    let bits = x.to_bits();
    let sign = ((bits >> 48) & 0x8000) as u16;
    let exp = ((bits >> F64_MANT_BITS) & 0x7FF) as i32;
    let man = bits & ((1u64 << F64_MANT_BITS) - 1);

    if exp == 0x7FF {
        return if man == 0 {
            sign | F16_INFINITY
        } else {
            sign | F16_NAN | ((man >> 42) as u16 & 0x03FF)
        };
    }
    if exp == 0 {
        // f64 subnormals and zeros are far below half the smallest binary16 subnormal.
        return sign;
    }

    let sig = (1u64 << F64_MANT_BITS) | man;
    let half_exp = exp - F64_EXP_BIAS + F16_EXP_BIAS;

    // Number of low significand bits that fall off the binary16 format.
    let shift = if half_exp >= 1 {
        F64_MANT_BITS - F16_MANT_BITS
    } else {
        let extra = (1 - half_exp) as u32;
        match (F64_MANT_BITS - F16_MANT_BITS).checked_add(extra) {
            Some(s) if s <= 53 => s,
            _ => return sign,
        }
    };

    let kept = sig >> shift;
    let rem = sig & ((1u64 << shift) - 1);
    let halfway = 1u64 << (shift - 1);
    let rounded = if rem > halfway || (rem == halfway && kept & 1 == 1) {
        kept + 1
    } else {
        kept
    };

    let magnitude = if half_exp >= 1 {
        // `rounded` carries the implicit bit; a carry out of the significand
        // bumps the exponent field through the addition.
        ((half_exp as u64) << F16_MANT_BITS) + rounded - (1u64 << F16_MANT_BITS)
    } else {
        rounded
    };
    if magnitude >= F16_INFINITY as u64 {
        sign | F16_INFINITY
    } else {
        sign | magnitude as u16
    }
}

/// Widen binary16 bits to `f64`. Exact for every finite value.
pub fn bits_to_f64(h: u16) -> f64 {
    let negative = h & 0x8000 != 0;
    let exp = ((h >> F16_MANT_BITS) & 0x1F) as i32;
    let man = (h & 0x03FF) as f64;
    let magnitude = match exp {
        0 => man * (-24f64).exp2(),
        0x1F if man == 0.0 => f64::INFINITY,
        0x1F => f64::NAN,
        _ => (1.0 + man / 1024.0) * ((exp - F16_EXP_BIAS) as f64).exp2(),
    };
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Round an `f64` through binary16 and back.
pub fn round(x: f64) -> f64 {
    bits_to_f64(f64_to_bits(x))
}
