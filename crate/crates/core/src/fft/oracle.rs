use std::f64::consts::PI;

use rayon::prelude::*;

use crate::butterfly::ComplexSample;

/// Direct `O(n^2)` DFT, `X[j] = sum_k x[k] e^{-2 pi i jk / n}`, in `f64`.
///
/// Each root is evaluated with its own `sin_cos` call on the reduced index
/// `jk mod n`. Works for any length, including non-powers of two.
pub fn dft_oracle(input: &[ComplexSample]) -> Vec<ComplexSample> {
    let n = input.len();
    if n == 0 {
        return Vec::new();
    }
    let roots: Vec<(f64, f64)> = (0..n)
        .map(|r| {
            let (s, c) = (-2.0 * PI * r as f64 / n as f64).sin_cos();
            (c, s)
        })
        .collect();
    (0..n)
        .into_par_iter()
        .map(|j| {
            let (mut re, mut im) = (0.0, 0.0);
            for (k, x) in input.iter().enumerate() {
                let (c, s) = roots[(j * k) % n];
                re += x.re * c - x.im * s;
                im += x.re * s + x.im * c;
            }
            ComplexSample::new(re, im)
        })
        .collect()
}
