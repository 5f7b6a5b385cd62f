//! Fast normal forms: linear merges of seminormal forms, divide and conquer
//! for arbitrary words, and a single middle-out pass that erases bad pairs.
//!
//! Total cost is `O(n log n)` letter visits for a word of length `n`.
//! The merge recursions are unrolled into two-pointer loops; the pending
//! shifts on either side are carried by [`ShiftedView`] cursors.

use alloc::vec::Vec;

use crate::word::{Letter, NormalWord, SeminormalWord, Sign, Word};

/// Observer for instrumented runs. All hooks default to no-ops.
pub trait Probe {
    /// `n` letters were read or moved.
    fn visit(&mut self, _n: usize) {}
    /// A bad pair was erased; arguments are the 1-based positions of its
    /// letters in the positive and negative parts of the input.
    fn bad_pair(&mut self, _pos_rank: usize, _neg_rank: usize) {}
}

/// Probe that ignores everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoProbe;

impl Probe for NoProbe {}

/// Counts letter visits and records erased bad pairs in processing order.
#[derive(Debug, Default, Clone)]
pub struct Counter {
    pub visits: u64,
    pub bad_pairs: Vec<(usize, usize)>,
}

impl Probe for Counter {
    fn visit(&mut self, n: usize) {
        self.visits += n as u64;
    }

    fn bad_pair(&mut self, pos_rank: usize, neg_rank: usize) {
        self.bad_pairs.push((pos_rank, neg_rank));
    }
}

/// Read cursor over an ascending index list with a lazily applied offset.
#[derive(Debug, Clone)]
pub struct ShiftedView<'a> {
    base: &'a [u64],
    at: usize,
    shift: i64,
}

impl<'a> ShiftedView<'a> {
    pub fn new(base: &'a [u64], shift: i64) -> Self {
        ShiftedView { base, at: 0, shift }
    }

    /// Materialized index of the current head.
    #[inline]
    pub fn head(&self) -> Option<u64> {
        self.base.get(self.at).map(|&i| self.materialize(i))
    }

    #[inline]
    fn materialize(&self, i: u64) -> u64 {
        let v = i as i64 + self.shift;
        debug_assert!(v >= 0, "shift took index {i} below zero");
        v as u64
    }

    #[inline]
    pub fn advance(&mut self) {
        self.at += 1;
    }

    #[inline]
    pub fn bump(&mut self) {
        self.shift += 1;
    }

    pub fn remaining(&self) -> usize {
        self.base.len() - self.at
    }

    /// Moves every remaining letter, materialized, into `out`.
    fn drain_into(&mut self, out: &mut Vec<u64>) {
        let shift = self.shift;
        out.extend(self.base[self.at..].iter().map(|&i| (i as i64 + shift) as u64));
        self.at = self.base.len();
    }
}

/// Stack of pending downward shifts paired with an accumulator word.
///
/// Entry `k` holds the number of bad pairs erased while the `k`-th pushed
/// letter was the most recent one; shifts accumulate towards the bottom.
#[derive(Debug, Default, Clone)]
pub struct DeltaStack {
    letters: Vec<u64>,
    deltas: Vec<u64>,
}

impl DeltaStack {
    fn with_capacity(n: usize) -> Self {
        DeltaStack { letters: Vec::with_capacity(n), deltas: Vec::with_capacity(n) }
    }

    #[inline]
    fn push(&mut self, index: u64) {
        self.letters.push(index);
        self.deltas.push(0);
    }

    /// Current index of the most recently pushed letter.
    #[inline]
    fn top_current(&self) -> Option<u64> {
        match (self.letters.last(), self.deltas.last()) {
            (Some(&i), Some(&d)) => Some(i - d),
            _ => None,
        }
    }

    #[inline]
    fn increment_top(&mut self) {
        if let Some(d) = self.deltas.last_mut() {
            *d += 1;
        }
    }

    pub fn len(&self) -> usize {
        debug_assert_eq!(self.letters.len(), self.deltas.len());
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pops every letter, most recent first, applying accumulated shifts.
    fn replay(mut self, out: &mut Vec<u64>) {
        let mut acc = 0;
        while let (Some(i), Some(d)) = (self.letters.pop(), self.deltas.pop()) {
            acc += d;
            out.push(i - acc);
        }
    }
}

fn neg_pos<P: Probe>(n: &[u64], p: &[u64], e1: i64, e2: i64, probe: &mut P) -> (Vec<u64>, Vec<u64>) {
    let mut n = ShiftedView::new(n, e1);
    let mut p = ShiftedView::new(p, e2);
    let mut pos = Vec::with_capacity(p.remaining());
    let mut neg = Vec::with_capacity(n.remaining());
    while let (Some(j), Some(i)) = (n.head(), p.head()) {
        if j == i {
            probe.visit(2);
            n.advance();
            p.advance();
        } else if j < i {
            // x_j^-1 moves to the far right; everything it passes goes up by one
            probe.visit(1);
            neg.push(j);
            n.advance();
            p.bump();
        } else {
            probe.visit(1);
            pos.push(i);
            p.advance();
            n.bump();
        }
    }
    probe.visit(n.remaining() + p.remaining());
    p.drain_into(&mut pos);
    n.drain_into(&mut neg);
    (pos, neg)
}

fn pos_pos<P: Probe>(p1: &[u64], p2: &[u64], e1: i64, e2: i64, probe: &mut P) -> Vec<u64> {
    let mut left = ShiftedView::new(p1, e1);
    let mut right = ShiftedView::new(p2, e2);
    let mut out = Vec::with_capacity(p1.len() + p2.len());
    while let (Some(a), Some(b)) = (left.head(), right.head()) {
        probe.visit(1);
        if a <= b {
            out.push(a);
            left.advance();
        } else {
            out.push(b);
            right.advance();
            left.bump();
        }
    }
    probe.visit(left.remaining() + right.remaining());
    left.drain_into(&mut out);
    right.drain_into(&mut out);
    out
}

/// Seminormal form of `δ_{e1}(n) δ_{e2}(p)` for a negative word `n` and a
/// positive word `p`, both given as ascending index lists.
pub fn merge_neg_pos(n: &[u64], p: &[u64], e1: i64, e2: i64) -> SeminormalWord {
    let (pos, neg) = neg_pos(n, p, e1, e2, &mut NoProbe);
    SeminormalWord::from_sorted(pos, neg)
}

/// Sorted positive word equal to `δ_{e1}(p1) δ_{e2}(p2)`. Equal heads keep
/// the left word's letter first.
pub fn merge_pos_pos(p1: &[u64], p2: &[u64], e1: i64, e2: i64) -> SeminormalWord {
    SeminormalWord::from_sorted(pos_pos(p1, p2, e1, e2, &mut NoProbe), Vec::new())
}

/// Sorted negative word equal to `δ_{e1}(n1) δ_{e2}(n2)`.
///
/// The inverse of `n1 n2` is the positive word `n2^-1 n1^-1`, so this is a
/// positive merge with the arguments swapped.
pub fn merge_neg_neg(n1: &[u64], n2: &[u64], e1: i64, e2: i64) -> SeminormalWord {
    SeminormalWord::from_sorted(Vec::new(), pos_pos(n2, n1, e2, e1, &mut NoProbe))
}

fn merge_probed<P: Probe>(w1: SeminormalWord, w2: SeminormalWord, probe: &mut P) -> SeminormalWord {
    let (p1, n1) = w1.into_parts();
    let (p2, n2) = w2.into_parts();
    let (p2, n1) = neg_pos(&n1, &p2, 0, 0, probe);
    let pos = pos_pos(&p1, &p2, 0, 0, probe);
    let neg = pos_pos(&n2, &n1, 0, 0, probe);
    SeminormalWord::from_sorted(pos, neg)
}

/// Seminormal form of the product `w1 w2`.
pub fn merge(w1: &SeminormalWord, w2: &SeminormalWord) -> SeminormalWord {
    merge_probed(w1.clone(), w2.clone(), &mut NoProbe)
}

fn seminormal_rec<P: Probe>(letters: &[Letter], probe: &mut P) -> SeminormalWord {
    match letters {
        [] => SeminormalWord::empty(),
        [l] => {
            probe.visit(1);
            SeminormalWord::from_letter(*l)
        }
        _ => {
            let mid = letters.len().div_ceil(2);
            let (a, b) = letters.split_at(mid);
            let u1 = seminormal_rec(a, probe);
            let u2 = seminormal_rec(b, probe);
            merge_probed(u1, u2, probe)
        }
    }
}

/// Seminormal form of an arbitrary word by recursive halving.
pub fn seminormal_form(w: &Word) -> SeminormalWord {
    seminormal_rec(w.letters(), &mut NoProbe)
}

pub fn seminormal_form_probed<P: Probe>(w: &Word, probe: &mut P) -> SeminormalWord {
    seminormal_rec(w.letters(), probe)
}

/// Erases every bad pair of a seminormal form in one middle-out pass.
pub fn erase_bad_pairs(u: &SeminormalWord) -> NormalWord {
    erase_bad_pairs_probed(u, &mut NoProbe)
}

pub fn erase_bad_pairs_probed<P: Probe>(u: &SeminormalWord, probe: &mut P) -> NormalWord {
    let (pos, neg) = (u.pos(), u.neg());
    let (mut s, mut t) = (pos.len(), neg.len());
    let mut w1 = DeltaStack::with_capacity(s);
    let mut w2 = DeltaStack::with_capacity(t);
    while s > 0 || t > 0 {
        let i = (s > 0).then(|| pos[s - 1]);
        let j = (t > 0).then(|| neg[t - 1]);
        match (i, j) {
            (Some(i), None) => {
                probe.visit(1);
                w1.push(i);
                s -= 1;
            }
            (Some(i), Some(j)) if i > j => {
                probe.visit(1);
                w1.push(i);
                s -= 1;
            }
            (None, Some(j)) => {
                probe.visit(1);
                w2.push(j);
                t -= 1;
            }
            (Some(i), Some(j)) if j > i => {
                probe.visit(1);
                w2.push(j);
                t -= 1;
            }
            (Some(i), Some(_)) => {
                probe.visit(2);
                // the pair survives iff x_{i+1}^{±1} is still present; the
                // nearest processed letters are the only candidates
                let guards = |top: Option<u64>| top.is_some_and(|a| a == i || a == i + 1);
                if guards(w1.top_current()) || guards(w2.top_current()) {
                    w1.push(i);
                    w2.push(i);
                } else {
                    probe.bad_pair(s, t);
                    w1.increment_top();
                    w2.increment_top();
                }
                s -= 1;
                t -= 1;
            }
            (None, None) => unreachable!(),
        }
    }
    probe.visit(w1.len() + w2.len());
    let mut out_pos = Vec::with_capacity(w1.len());
    let mut out_neg = Vec::with_capacity(w2.len());
    w1.replay(&mut out_pos);
    w2.replay(&mut out_neg);
    NormalWord::from_parts_unchecked(out_pos, out_neg)
}

/// The normal form of `w`.
pub fn normal_form(w: &Word) -> NormalWord {
    normal_form_probed(w, &mut NoProbe)
}

pub fn normal_form_probed<P: Probe>(w: &Word, probe: &mut P) -> NormalWord {
    let semi = seminormal_form_probed(w, probe);
    erase_bad_pairs_probed(&semi, probe)
}

/// Normal form of the product `a b` in linear time.
pub fn multiply(a: &NormalWord, b: &NormalWord) -> NormalWord {
    let semi = merge_probed(a.as_seminormal(), b.as_seminormal(), &mut NoProbe);
    erase_bad_pairs(&semi)
}

/// Normal form of `a b c`.
pub fn multiply3(a: &NormalWord, b: &NormalWord, c: &NormalWord) -> NormalWord {
    let ab = merge_probed(a.as_seminormal(), b.as_seminormal(), &mut NoProbe);
    erase_bad_pairs(&merge_probed(ab, c.as_seminormal(), &mut NoProbe))
}

/// Normal form of `a` times a single letter.
pub fn multiply_letter(a: &NormalWord, letter: Letter) -> NormalWord {
    let semi = merge_probed(a.as_seminormal(), SeminormalWord::from_letter(letter), &mut NoProbe);
    erase_bad_pairs(&semi)
}

/// Normalizes a word known to be short, e.g. a generator such as `x_0 x_k^-1`.
pub fn normal_form_of_letters(letters: &[(u64, Sign)]) -> NormalWord {
    let w: Word = letters.iter().map(|&(i, s)| Letter::new(i, s).expect("index in range")).collect();
    normal_form(&w)
}
