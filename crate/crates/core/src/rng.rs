//! Seeded randomness shared by every randomized operation.
//!
//! The stream is SplitMix64. A choice among `n` options maps the next output
//! `r` to `(r * n) >> 64` (128-bit product). Independent substreams are made
//! with [`SeededRng::fork`], which seeds a fresh SplitMix64 with the parent's
//! next output. These three rules fully determine all key material.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: SplitMix64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { seed, inner: SplitMix64::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform-ish index in `0..n`; bias is below `n / 2^64`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn fork(&mut self) -> SeededRng {
        SeededRng::new(self.next_u64())
    }
}
