//! The commuting subgroups `A_s` and `B_s`, their generating sets, and the
//! incremental random walks used to sample keys and base words.
//!
//! * `S_A = { x_0 x_k^-1 : 1 <= k <= s }` generates `A_s`.
//! * `S_B = { x_k : s+1 <= k <= 2s }` lies in `B_s`.
//! * `S_W = { x_k : 0 <= k <= s+2 }` is used for the public base word.
//!
//! Signed generator lists are ordered `g_1, g_1^-1, g_2, g_2^-1, ..`.

use alloc::vec::Vec;

use crate::engine::multiply;
use crate::error::KeyError;
use crate::rng::SeededRng;
use crate::word::{NormalWord, Sign};

/// Subgroup index `s` and target normal-form length `M` for sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgroupParams {
    s: u64,
    m: usize,
}

impl SubgroupParams {
    pub fn new(s: u64, m: usize) -> Result<Self, KeyError> {
        if s < 2 {
            return Err(KeyError::SmallS(s));
        }
        if m == 0 {
            return Err(KeyError::BadLength(m));
        }
        Ok(SubgroupParams { s, m })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn target_len(&self) -> usize {
        self.m
    }
}

/// Membership in `A_s`: positive and negative parts have the same length `m`
/// and `i_k - k < s`, `j_k - k < s` for `k = 1..=m`.
pub fn in_a(w: &NormalWord, s: u64) -> bool {
    let within = |xs: &[u64]| xs.iter().zip(1u64..).all(|(&i, k)| i < s + k);
    w.pos().len() == w.neg().len() && within(w.pos()) && within(w.neg())
}

/// Membership in `B_s`: every index is at least `s + 1`. Rewriting never
/// lowers the minimum index, so checking the normal form suffices.
pub fn in_b(w: &NormalWord, s: u64) -> bool {
    w.min_index().is_none_or(|i| i > s)
}

fn letter_word(index: u64, sign: Sign) -> NormalWord {
    match sign {
        Sign::Pos => NormalWord::from_parts_unchecked(alloc::vec![index], Vec::new()),
        Sign::Neg => NormalWord::from_parts_unchecked(Vec::new(), alloc::vec![index]),
    }
}

/// `x_0 x_k^-1` and its inverse `x_k x_0^-1` for `k = 1..=s`.
pub fn signed_a_generators(s: u64) -> Vec<NormalWord> {
    (1..=s)
        .flat_map(|k| {
            [
                NormalWord::from_parts_unchecked(alloc::vec![0], alloc::vec![k]),
                NormalWord::from_parts_unchecked(alloc::vec![k], alloc::vec![0]),
            ]
        })
        .collect()
}

/// `x_k^{±1}` for `k = s+1..=2s`.
pub fn signed_b_generators(s: u64) -> Vec<NormalWord> {
    (s + 1..=2 * s).flat_map(|k| [letter_word(k, Sign::Pos), letter_word(k, Sign::Neg)]).collect()
}

/// `x_k^{±1}` for `k = 0..=s+2`.
pub fn signed_w_generators(s: u64) -> Vec<NormalWord> {
    (0..=s + 2).flat_map(|k| [letter_word(k, Sign::Pos), letter_word(k, Sign::Neg)]).collect()
}

/// Right-multiplies by uniformly chosen generators, renormalizing each time,
/// until the normal form first reaches length `target`.
pub fn random_walk(
    generators: &[NormalWord],
    target: usize,
    rng: &mut SeededRng,
) -> Result<NormalWord, KeyError> {
    let cap = 64 * target;
    let mut current = NormalWord::empty();
    for _ in 0..cap {
        let g = &generators[rng.below(generators.len())];
        current = multiply(&current, g);
        if current.len() >= target {
            return Ok(current);
        }
    }
    Err(KeyError::GenerationStalled { steps: cap, length: current.len() })
}

/// Random element of `A_s` as a product of `S_A^{±1}`.
pub fn gen_a(params: &SubgroupParams, rng: &mut SeededRng) -> Result<NormalWord, KeyError> {
    random_walk(&signed_a_generators(params.s), params.m, rng)
}

/// Random element of `B_s` as a product of `S_B^{±1}`.
pub fn gen_b(params: &SubgroupParams, rng: &mut SeededRng) -> Result<NormalWord, KeyError> {
    random_walk(&signed_b_generators(params.s), params.m, rng)
}

/// Random public base word as a product of `S_W^{±1}`.
pub fn gen_base_word(params: &SubgroupParams, rng: &mut SeededRng) -> Result<NormalWord, KeyError> {
    random_walk(&signed_w_generators(params.s), params.m, rng)
}
