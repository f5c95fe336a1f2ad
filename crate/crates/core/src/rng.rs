//! Seeded input generation.
//!
//! SplitMix64 (state increment `0x9E3779B97F4A7C15`, output mix constants
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`) seeded directly with the
//! user seed. Each `f64` takes the top 53 bits of one output.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::butterfly::ComplexSample;

#[derive(Debug, Clone)]
pub struct SampleRng {
    inner: SplitMix64,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (-53f64).exp2()
    }

    /// Uniform in `[-1, 1)`.
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }

    pub fn complex(&mut self) -> ComplexSample {
        let re = self.symmetric();
        let im = self.symmetric();
        ComplexSample::new(re, im)
    }

    pub fn complex_vec(&mut self, n: usize) -> Vec<ComplexSample> {
        (0..n).map(|_| self.complex()).collect()
    }
}
