//! Length-based attack on a transmitted token.
//!
//! Given the public base word `w` and Alice's token `w' = a w b`, the search
//! grows two vertex sets, one around `w` and one around `w'`, in the graph
//! whose edges are `v -> g v` for `g ∈ S_A^{±1}` and `v -> v h` for
//! `h ∈ S_B^{±1}`. Each round expands the shortest unexpanded vertex on the
//! `w` side and then on the `w'` side (FIFO among equal lengths). When the
//! sets meet, the two edge paths are spliced into `w' = x_1 w x_2`.
//!
//! Vertices are stored by a 128-bit fingerprint of their canonical form plus
//! a parent pointer. Only expanded vertices keep their word, delta-encoded;
//! any other vertex is rebuilt from its parent in one multiplication.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use integer_encoding::VarInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thompson_core::engine::multiply;
use thompson_core::{Letter, NormalWord, Word};
use xxhash_rust::xxh3::Xxh3;

/// Caps on a single search; whichever is hit first ends it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackBudget {
    /// Maximum number of vertex expansions, summed over both sides.
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl AttackBudget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Option<Self> {
        (max_nodes > 0 && max_seconds > 0.0).then_some(AttackBudget { max_nodes, max_seconds })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    BudgetExhausted,
}

/// `x_0 x_k^-1`, or its inverse `x_k x_0^-1` when `inverse` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AGen {
    pub k: u32,
    pub inverse: bool,
}

/// `x_k`, or `x_k^-1` when `inverse` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BGen {
    pub k: u32,
    pub inverse: bool,
}

impl AGen {
    pub fn element(self) -> NormalWord {
        let k = u64::from(self.k);
        let (pos, neg) = if self.inverse { (vec![k], vec![0]) } else { (vec![0], vec![k]) };
        NormalWord::new(pos, neg).expect("generator of A_s")
    }

    pub fn inv(self) -> Self {
        AGen { inverse: !self.inverse, ..self }
    }

    fn letters(self) -> [Letter; 2] {
        let k = u64::from(self.k);
        if self.inverse {
            [Letter::pos(k), Letter::neg(0)]
        } else {
            [Letter::pos(0), Letter::neg(k)]
        }
    }
}

impl BGen {
    pub fn element(self) -> NormalWord {
        let k = u64::from(self.k);
        let (pos, neg) = if self.inverse { (vec![], vec![k]) } else { (vec![k], vec![]) };
        NormalWord::new(pos, neg).expect("generator of B_s")
    }

    pub fn inv(self) -> Self {
        BGen { inverse: !self.inverse, ..self }
    }

    fn letter(self) -> Letter {
        let k = u64::from(self.k);
        if self.inverse {
            Letter::neg(k)
        } else {
            Letter::pos(k)
        }
    }
}

/// Label of an edge of the search graph: `(g, 1)` or `(1, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Left(AGen),
    Right(BGen),
}

/// Recovered factorization `w' = x_1 w x_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factors {
    pub left: Vec<AGen>,
    pub right: Vec<BGen>,
}

impl Factors {
    /// `x_1` spelled out in the generators of F.
    pub fn left_word(&self) -> Word {
        self.left.iter().flat_map(|g| g.letters()).collect()
    }

    /// `x_2` spelled out in the generators of F.
    pub fn right_word(&self) -> Word {
        self.right.iter().map(|h| h.letter()).collect()
    }

    /// Normal form of `x_1 w x_2`, computed generator by generator.
    pub fn apply(&self, w: &NormalWord) -> NormalWord {
        let mut acc = w.clone();
        for g in self.left.iter().rev() {
            acc = multiply(&g.element(), &acc);
        }
        for h in &self.right {
            acc = multiply(&acc, &h.element());
        }
        acc
    }
}

impl Serialize for Factors {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Factors", 2)?;
        st.serialize_field("x1", &self.left_word().to_string())?;
        st.serialize_field("x2", &self.right_word().to_string())?;
        st.end()
    }
}

/// Vertex counts of both sides after a given number of expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrontierSample {
    pub expanded: u64,
    pub base_side: u64,
    pub token_side: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AttackReport {
    pub outcome: Outcome,
    pub factors: Option<Factors>,
    pub nodes_expanded: u64,
    pub vertices: u64,
    pub frontier_sizes: Vec<FrontierSample>,
    pub wall_seconds: f64,
}

pub(crate) type Fingerprint = u128;

pub(crate) fn fingerprint(w: &NormalWord) -> Fingerprint {
    let mut h = Xxh3::new();
    h.update(&(w.pos().len() as u64).to_le_bytes());
    for i in w.pos() {
        h.update(&i.to_le_bytes());
    }
    h.update(&(w.neg().len() as u64).to_le_bytes());
    for j in w.neg() {
        h.update(&j.to_le_bytes());
    }
    h.digest128()
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    parent: u32,
    edge: Option<Edge>,
    // position in the word arena once expanded
    slot: u32,
}

/// Words of expanded vertices, delta-encoded back to back in one buffer.
#[derive(Default)]
struct WordArena {
    bytes: Vec<u8>,
    starts: Vec<usize>,
}

impl WordArena {
    fn push_list(&mut self, xs: &[u64]) {
        let mut buf = [0u8; 10];
        let mut put = |v: u64, bytes: &mut Vec<u8>| {
            let n = v.encode_var(&mut buf);
            bytes.extend_from_slice(&buf[..n]);
        };
        put(xs.len() as u64, &mut self.bytes);
        let mut prev = 0;
        for &x in xs {
            put(x - prev, &mut self.bytes);
            prev = x;
        }
    }

    fn push(&mut self, w: &NormalWord) -> u32 {
        let slot = self.starts.len() as u32;
        self.starts.push(self.bytes.len());
        self.push_list(w.pos());
        self.push_list(w.neg());
        slot
    }

    fn get(&self, slot: u32) -> NormalWord {
        let mut at = self.starts[slot as usize];
        let mut next = || {
            let (v, n) = u64::decode_var(&self.bytes[at..]).expect("arena holds whole varints");
            at += n;
            v
        };
        let mut list = || {
            let len = next() as usize;
            let mut prev = 0;
            (0..len)
                .map(|_| {
                    prev += next();
                    prev
                })
                .collect::<Vec<u64>>()
        };
        let pos = list();
        let neg = list();
        NormalWord::new(pos, neg).expect("arena stores normal forms")
    }
}

/// One half of the bidirectional search.
struct Side {
    root: NormalWord,
    nodes: Vec<Node>,
    seen: HashMap<Fingerprint, u32>,
    // (length, insertion id): shortest first, FIFO among ties
    open: BinaryHeap<Reverse<(u32, u32)>>,
    arena: WordArena,
}

impl Side {
    fn new(root: NormalWord) -> Self {
        let mut side = Side {
            nodes: Vec::new(),
            seen: HashMap::new(),
            open: BinaryHeap::new(),
            root: NormalWord::empty(),
            arena: WordArena::default(),
        };
        side.insert(fingerprint(&root), root.len(), NONE, None);
        side.root = root;
        side
    }

    fn insert(&mut self, key: Fingerprint, len: usize, parent: u32, edge: Option<Edge>) -> Option<u32> {
        let id = self.nodes.len() as u32;
        match self.seen.entry(key) {
            Entry::Occupied(_) => None,
            Entry::Vacant(slot) => {
                slot.insert(id);
                self.nodes.push(Node { parent, edge, slot: NONE });
                self.open.push(Reverse((len as u32, id)));
                Some(id)
            }
        }
    }

    fn path(&self, mut id: u32) -> Vec<Edge> {
        let mut edges = Vec::new();
        while let Some(edge) = self.nodes[id as usize].edge {
            edges.push(edge);
            id = self.nodes[id as usize].parent;
        }
        edges.reverse();
        edges
    }

    /// Rebuilds the word of `id` from its (already expanded) parent and
    /// stores it, since `id` is about to be expanded.
    fn expand(&mut self, id: u32) -> NormalWord {
        let node = self.nodes[id as usize];
        let w = match node.edge {
            None => self.root.clone(),
            Some(edge) => step(&self.arena.get(self.nodes[node.parent as usize].slot), edge),
        };
        self.nodes[id as usize].slot = self.arena.push(&w);
        w
    }

    fn len(&self) -> u64 {
        self.nodes.len() as u64
    }
}

fn step(w: &NormalWord, edge: Edge) -> NormalWord {
    match edge {
        Edge::Left(g) => multiply(&g.element(), w),
        Edge::Right(h) => multiply(w, &h.element()),
    }
}

/// All `2s` signed A-generators followed by all `2s` signed B-generators.
pub fn edge_labels(s: u64) -> Vec<Edge> {
    let s = u32::try_from(s).expect("s fits in u32");
    let a = (1..=s).flat_map(|k| [false, true].map(|inverse| Edge::Left(AGen { k, inverse })));
    let b = (s + 1..=2 * s).flat_map(|k| [false, true].map(|inverse| Edge::Right(BGen { k, inverse })));
    a.chain(b).collect()
}

/// Splices a path `w -> meet` and a path `w' -> meet` into `w' = x_1 w x_2`.
fn splice(base_path: &[Edge], token_path: &[Edge]) -> Factors {
    let mut left = Vec::new();
    let mut right = Vec::new();
    // meet = L'_k..L'_1 w' R'_1..R'_k, so w' = L'_1^-1..L'_k^-1 meet R'_k^-1..R'_1^-1
    for edge in token_path {
        if let Edge::Left(g) = edge {
            left.push(g.inv());
        }
    }
    // meet = L_k..L_1 w R_1..R_k
    for edge in base_path.iter().rev() {
        if let Edge::Left(g) = edge {
            left.push(*g);
        }
    }
    for edge in base_path {
        if let Edge::Right(h) = edge {
            right.push(*h);
        }
    }
    for edge in token_path.iter().rev() {
        if let Edge::Right(h) = edge {
            right.push(h.inv());
        }
    }
    Factors { left, right }
}

/// Runs the bidirectional length-based search from `base` and `token`.
pub fn length_attack(base: &NormalWord, token: &NormalWord, s: u64, budget: AttackBudget) -> AttackReport {
    let start = Instant::now();
    let labels = edge_labels(s);
    let sample_every = (budget.max_nodes / 256).max(1);
    let mut sides = [Side::new(base.clone()), Side::new(token.clone())];
    let mut samples = Vec::new();
    let mut expanded = 0u64;

    let finish = |outcome, factors, expanded, sides: &[Side; 2], samples| AttackReport {
        outcome,
        factors,
        nodes_expanded: expanded,
        vertices: sides[0].len() + sides[1].len(),
        frontier_sizes: samples,
        wall_seconds: start.elapsed().as_secs_f64(),
    };

    if fingerprint(base) == fingerprint(token) {
        let factors = Factors { left: Vec::new(), right: Vec::new() };
        return finish(Outcome::Success, Some(factors), 0, &sides, samples);
    }

    let mut turn = 0usize;
    loop {
        if expanded >= budget.max_nodes || start.elapsed().as_secs_f64() >= budget.max_seconds {
            return finish(Outcome::BudgetExhausted, None, expanded, &sides, samples);
        }
        let (this, other) = (turn % 2, 1 - turn % 2);
        turn += 1;
        let Some(Reverse((_, id))) = sides[this].open.pop() else {
            if sides[other].open.is_empty() {
                return finish(Outcome::BudgetExhausted, None, expanded, &sides, samples);
            }
            continue;
        };
        let current = sides[this].expand(id);
        expanded += 1;
        for &edge in &labels {
            let next = step(&current, edge);
            let key = fingerprint(&next);
            let Some(new_id) = sides[this].insert(key, next.len(), id, Some(edge)) else {
                continue;
            };
            if let Some(&meet) = sides[other].seen.get(&key) {
                let (base_path, token_path) = if this == 0 {
                    (sides[0].path(new_id), sides[1].path(meet))
                } else {
                    (sides[0].path(meet), sides[1].path(new_id))
                };
                let factors = splice(&base_path, &token_path);
                // a fingerprint collision would fail here; keep searching then
                if factors.apply(base) == *token {
                    return finish(Outcome::Success, Some(factors), expanded, &sides, samples);
                }
            }
        }
        if expanded.is_multiple_of(sample_every) {
            samples.push(FrontierSample { expanded, base_side: sides[0].len(), token_side: sides[1].len() });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use thompson_core::engine::normal_form;

    fn nf(s: &str) -> NormalWord {
        normal_form(&s.parse().unwrap())
    }

    fn budget(n: u64) -> AttackBudget {
        AttackBudget::new(n, 60.0).unwrap()
    }

    #[test]
    fn equal_words_succeed_immediately() {
        let w = nf("x0 x3 x1^-1");
        let r = length_attack(&w, &w, 2, budget(10));
        assert_eq!(r.outcome, Outcome::Success);
        assert_eq!(r.nodes_expanded, 0);
        let f = r.factors.unwrap();
        assert!(f.left.is_empty() && f.right.is_empty());
    }

    #[test]
    fn recovers_small_key() {
        let w = nf("x0");
        let token = nf("x0 x2^-1 x0 x3");
        let r = length_attack(&w, &token, 2, budget(10_000));
        assert_eq!(r.outcome, Outcome::Success);
        let f = r.factors.unwrap();
        assert_eq!(f.apply(&w), token);
        let spelled = f.left_word().concat(&w.as_word()).concat(&f.right_word());
        assert_eq!(normal_form(&spelled), token);
    }

    #[test]
    fn exhausts_small_budget_on_real_key() {
        let inst = crate::sweep::Instance::generate(crate::sweep::GridPoint { s: 3, m: 64 }, 7).unwrap();
        let r = inst.attack(budget(200));
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
        assert_eq!(r.nodes_expanded, 200);
        assert!(r.factors.is_none());
        assert!(!r.frontier_sizes.is_empty());
    }

    #[test]
    fn budget_validation() {
        assert!(AttackBudget::new(0, 1.0).is_none());
        assert!(AttackBudget::new(1, 0.0).is_none());
    }

    #[test]
    fn labels_cover_both_alphabets() {
        let labels = edge_labels(3);
        assert_eq!(labels.len(), 12);
        let lefts = labels.iter().filter(|e| matches!(e, Edge::Left(_))).count();
        assert_eq!(lefts, 6);
        assert!(labels.contains(&Edge::Right(BGen { k: 6, inverse: true })));
    }

    #[test]
    fn splice_inverts_token_side() {
        let g = AGen { k: 1, inverse: false };
        let h = BGen { k: 3, inverse: false };
        let f = splice(&[Edge::Left(g)], &[Edge::Right(h)]);
        // meet = g w = w' h  =>  w' = g w h^-1
        assert_eq!(f.left, vec![g]);
        assert_eq!(f.right, vec![h.inv()]);
    }
}
