//! Portable seeded randomness.
//!
//! All sampling goes through SplitMix64 (Vigna's reference constants: state
//! increment `0x9e3779b97f4a7c15`, finalizer multipliers `0xbf58476d1ce4e5b9`
//! and `0x94d049bb133111eb`). A uniform double is the top 53 bits of one
//! output word scaled by `2^-53`, so any reimplementation of those two rules
//! reproduces the same inputs bit for bit.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::model::{DistributionSpec, PointSet};

#[derive(Debug, Clone)]
pub struct PortableRng(SplitMix64);

impl PortableRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..bound` by rejection, so no modulo bias.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Seed of trial `index` in an experiment seeded with `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

/// Draws `n` i.i.d. points in `[0,1]^d`, applying the distribution's
/// quantile function to each coordinate.
pub fn sample_points(
    rng: &mut PortableRng,
    n: usize,
    d: usize,
    dist: &DistributionSpec,
) -> PointSet {
    let mut coords = Vec::with_capacity(n * d);
    for _ in 0..n * d {
        let u = rng.next_f64();
        coords.push(dist.quantile(u).clamp(0.0, 1.0));
    }
    PointSet::new(d, coords).expect("d >= 1")
}
