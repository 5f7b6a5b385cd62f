#![allow(dead_code)]

use thompson_core::{Letter, SeededRng, Word};

/// Every word of length exactly `len` over `x_0^{±1} .. x_{k-1}^{±1}`.
pub fn all_words(len: usize, k: u64) -> impl Iterator<Item = Word> {
    let base = 2 * k;
    let total = base.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut letters = Vec::with_capacity(len);
        for _ in 0..len {
            let d = code % base;
            code /= base;
            letters.push(if d.is_multiple_of(2) { Letter::pos(d / 2) } else { Letter::neg(d / 2) });
        }
        Word::from_letters(letters)
    })
}

pub fn random_word(rng: &mut SeededRng, len: usize, k: u64) -> Word {
    (0..len)
        .map(|_| {
            let d = rng.below(2 * k as usize) as u64;
            if d.is_multiple_of(2) {
                Letter::pos(d / 2)
            } else {
                Letter::neg(d / 2)
            }
        })
        .collect()
}
