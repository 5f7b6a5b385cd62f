//! Reference implementation of the rewriting system and of bad-pair removal.
//!
//! Everything here is deliberately naive (cubic time in the worst case) and
//! shares no code with [`crate::engine`]; it is the test oracle for the fast
//! pipeline. Rules, for `i < k`:
//!
//! ```text
//! PP       x_k    x_i     ->  x_i       x_{k+1}
//! NpSwap   x_k^-1 x_i     ->  x_i       x_{k+1}^-1
//! PnSwap   x_i^-1 x_k     ->  x_{k+1}   x_i^-1
//! NN       x_i^-1 x_k^-1  ->  x_{k+1}^-1 x_i^-1
//! Cancel   x_i^-1 x_i     ->  1
//! ```

use alloc::vec::Vec;

use crate::word::{Letter, NormalWord, SeminormalWord, Sign, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteRule {
    PP,
    NpSwap,
    PnSwap,
    NN,
    Cancel,
}

impl RewriteRule {
    /// The rule applying to the adjacent pair `left right`, if any.
    pub fn matching(left: Letter, right: Letter) -> Option<RewriteRule> {
        let (a, b) = (left.index(), right.index());
        match (left.sign(), right.sign()) {
            (Sign::Pos, Sign::Pos) if b < a => Some(RewriteRule::PP),
            (Sign::Neg, Sign::Pos) if b < a => Some(RewriteRule::NpSwap),
            (Sign::Neg, Sign::Pos) if a < b => Some(RewriteRule::PnSwap),
            (Sign::Neg, Sign::Pos) => Some(RewriteRule::Cancel),
            (Sign::Neg, Sign::Neg) if a < b => Some(RewriteRule::NN),
            _ => None,
        }
    }

    /// Right-hand side for the pair `left right`; empty for `Cancel`.
    pub fn rewrite(self, left: Letter, right: Letter) -> Vec<Letter> {
        let (a, b) = (left.index(), right.index());
        match self {
            RewriteRule::PP => alloc::vec![Letter::pos(b), Letter::pos(a + 1)],
            RewriteRule::NpSwap => alloc::vec![Letter::pos(b), Letter::neg(a + 1)],
            RewriteRule::PnSwap => alloc::vec![Letter::pos(b + 1), Letter::neg(a)],
            RewriteRule::NN => alloc::vec![Letter::neg(b + 1), Letter::neg(a)],
            RewriteRule::Cancel => Vec::new(),
        }
    }
}

fn apply_at(letters: &mut Vec<Letter>, k: usize, rule: RewriteRule) {
    let rhs = rule.rewrite(letters[k], letters[k + 1]);
    letters.splice(k..k + 2, rhs);
}

fn reduced_to_seminormal(letters: &[Letter]) -> SeminormalWord {
    let pos: Vec<u64> = letters.iter().filter(|l| l.is_pos()).map(|l| l.index()).collect();
    let neg: Vec<u64> = letters.iter().rev().filter(|l| !l.is_pos()).map(|l| l.index()).collect();
    SeminormalWord::new(pos, neg).expect("R-reduced words are seminormal")
}

/// Rewrites `w` to its R-reduced form, always applying the leftmost rule.
pub fn oracle_seminormal(w: &Word) -> SeminormalWord {
    let mut letters = w.letters().to_vec();
    let mut k = 0;
    while k + 1 < letters.len() {
        match RewriteRule::matching(letters[k], letters[k + 1]) {
            Some(rule) => {
                apply_at(&mut letters, k, rule);
                // only the pair straddling k-1 can have become reducible
                k = k.saturating_sub(1);
            }
            None => k += 1,
        }
    }
    reduced_to_seminormal(&letters)
}

/// Rewrites `w` using an arbitrary strategy: `choose(n)` picks which of the
/// `n` currently applicable positions to rewrite next (must return `< n`).
pub fn oracle_seminormal_with(w: &Word, mut choose: impl FnMut(usize) -> usize) -> SeminormalWord {
    let mut letters = w.letters().to_vec();
    loop {
        let sites: Vec<(usize, RewriteRule)> = (0..letters.len().saturating_sub(1))
            .filter_map(|k| RewriteRule::matching(letters[k], letters[k + 1]).map(|r| (k, r)))
            .collect();
        if sites.is_empty() {
            return reduced_to_seminormal(&letters);
        }
        let (k, rule) = sites[choose(sites.len())];
        apply_at(&mut letters, k, rule);
    }
}

/// Removes bad pairs one at a time, always taking the pair whose positions
/// are maximal, and shifting the enclosed segment down by one.
pub fn oracle_erase(semi: &SeminormalWord) -> NormalWord {
    let mut pos = semi.pos().to_vec();
    let mut neg = semi.neg().to_vec();
    loop {
        let occurs = |i: u64, pos: &[u64], neg: &[u64]| pos.contains(&i) || neg.contains(&i);
        let bad = pos.iter().copied().filter(|&i| neg.contains(&i) && !occurs(i + 1, &pos, &neg)).max();
        let Some(i) = bad else { break };
        let a = pos.iter().rposition(|&x| x == i).unwrap();
        let b = neg.iter().rposition(|&x| x == i).unwrap();
        pos.remove(a);
        neg.remove(b);
        for x in pos[a..].iter_mut().chain(neg[b..].iter_mut()) {
            *x -= 1;
        }
    }
    NormalWord::new(pos, neg).expect("bad-pair removal yields a normal form")
}

/// Normal form computed by naive rewriting followed by naive bad-pair removal.
pub fn oracle_normal(w: &Word) -> NormalWord {
    oracle_erase(&oracle_seminormal(w))
}
