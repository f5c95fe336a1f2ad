//! Shared fixtures for the criterion benchmarks.

use dualfft::rng::SampleRng;
use dualfft::ComplexSample;

/// Sizes swept by the transform benchmarks.
pub const SIZES: [usize; 4] = [64, 256, 1024, 4096];

/// Seeded input vector with components uniform in `[-1, 1)`.
pub fn input(n: usize) -> Vec<ComplexSample> {
    SampleRng::new(n as u64).complex_vec(n)
}
