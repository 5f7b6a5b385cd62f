//! Letter-visit and timing measurements for the normal form engine.

use std::time::Instant;

use serde::Serialize;
use thompson_core::engine::{normal_form_probed, Counter};
use thompson_core::{Letter, SeededRng, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub length: usize,
    pub letter_visits: u64,
    pub nanoseconds: u128,
}

/// Uniform word of length `len` over `x_0^{±1}, …, x_{k-1}^{±1}`.
pub fn random_word(rng: &mut SeededRng, len: usize, k: usize) -> Word {
    (0..len)
        .map(|_| {
            let c = rng.below(2 * k);
            let index = (c / 2) as u64;
            if c.is_multiple_of(2) {
                Letter::pos(index)
            } else {
                Letter::neg(index)
            }
        })
        .collect()
}

/// Visits and wall time for the normal form of one word.
pub fn measure(w: &Word) -> BenchRow {
    let mut probe = Counter::default();
    let start = Instant::now();
    let nf = normal_form_probed(w, &mut probe);
    let nanoseconds = start.elapsed().as_nanos();
    std::hint::black_box(nf);
    BenchRow { length: w.len(), letter_visits: probe.visits, nanoseconds }
}

/// One random word (indices 0..=9) per length `2^min_exp ..= 2^max_exp`.
pub fn bench_nf(min_exp: u32, max_exp: u32, seed: u64) -> Vec<BenchRow> {
    let mut rng = SeededRng::new(seed);
    (min_exp..=max_exp)
        .map(|e| {
            let w = random_word(&mut rng.fork(), 1usize << e, 10);
            measure(&w)
        })
        .collect()
}
