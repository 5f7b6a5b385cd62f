//! Letters, words and the positive-then-negative shapes used for elements of F.
//!
//! A [`SeminormalWord`] stores two ascending index lists `pos = [i_1, .., i_s]`
//! and `neg = [j_1, .., j_t]` and denotes the word
//! `x_{i_1} .. x_{i_s} x_{j_t}^-1 .. x_{j_1}^-1`. Note the negative part is
//! written in descending order while `neg` stores it ascending.
//! A [`NormalWord`] additionally forbids bad pairs, which makes it the unique
//! representative of its group element.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WordError;

/// Largest index a [`Letter`] may carry.
///
/// Rewriting raises an index by at most one per rewrite, so outputs of the
/// engine stay below `INDEX_CAP + |w|`, far from `u64` overflow.
pub const INDEX_CAP: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One occurrence of `x_i` or `x_i^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    index: u64,
    sign: Sign,
}

impl Letter {
    pub fn new(index: u64, sign: Sign) -> Result<Self, WordError> {
        if index > INDEX_CAP {
            return Err(WordError::IndexCap { index, cap: INDEX_CAP });
        }
        Ok(Letter { index, sign })
    }

    /// `x_index`.
    ///
    /// # Panics
    /// If `index` exceeds [`INDEX_CAP`].
    pub fn pos(index: u64) -> Self {
        Self::new(index, Sign::Pos).expect("index above cap")
    }

    /// `x_index^-1`.
    ///
    /// # Panics
    /// If `index` exceeds [`INDEX_CAP`].
    pub fn neg(index: u64) -> Self {
        Self::new(index, Sign::Neg).expect("index above cap")
    }

    pub fn index(self) -> u64 {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn is_pos(self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    pub fn shift(self, by: i64) -> Result<Self, WordError> {
        let index = shift_index(self.index, by)?;
        Letter::new(index, self.sign)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "x{}", self.index),
            Sign::Neg => write!(f, "x{}^-1", self.index),
        }
    }
}

fn shift_index(index: u64, by: i64) -> Result<u64, WordError> {
    index.checked_add_signed(by).ok_or(WordError::NegativeIndex { index, shift: by })
}

/// An arbitrary, not necessarily reduced, word in the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Group inverse: letters reversed, each sign flipped.
    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Syntactic concatenation; no reduction takes place.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Applies `x_i^{±1} -> x_{i+by}^{±1}` to every letter.
    pub fn shift(&self, by: i64) -> Result<Word, WordError> {
        let letters = self.letters.iter().map(|l| l.shift(by)).collect::<Result<_, _>>()?;
        Ok(Word { letters })
    }

    pub fn max_index(&self) -> Option<u64> {
        self.letters.iter().map(|l| l.index).max()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated `x<k>` / `x<k>^-1` tokens. A lone `1` (or
/// blank input) is the empty word.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            letters.push(parse_letter(token)?);
        }
        Ok(Word { letters })
    }
}

fn parse_letter(token: &str) -> Result<Letter, WordError> {
    let err = || WordError::Parse { token: String::from(token) };
    let body = token.strip_prefix('x').ok_or_else(err)?;
    let (digits, sign) = match body.strip_suffix("^-1") {
        Some(d) => (d, Sign::Neg),
        None => (body, Sign::Pos),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let index: u64 = digits.parse().map_err(|_| err())?;
    Letter::new(index, sign)
}

fn check_sorted(xs: &[u64], part: &'static str) -> Result<(), WordError> {
    if xs.windows(2).all(|w| w[0] <= w[1]) {
        Ok(())
    } else {
        Err(WordError::Unsorted { part })
    }
}

fn check_cap(xs: &[u64]) -> Result<(), WordError> {
    match xs.iter().find(|&&i| i > INDEX_CAP) {
        Some(&index) => Err(WordError::IndexCap { index, cap: INDEX_CAP }),
        None => Ok(()),
    }
}

/// Flattens `(pos, neg)` into `x_{pos ascending} x_{neg descending}^-1`.
fn flatten(pos: &[u64], neg: &[u64]) -> Word {
    let letters = pos
        .iter()
        .map(|&i| Letter { index: i, sign: Sign::Pos })
        .chain(neg.iter().rev().map(|&j| Letter { index: j, sign: Sign::Neg }))
        .collect();
    Word { letters }
}

/// A word of shape `x_{i_1} .. x_{i_s} x_{j_t}^-1 .. x_{j_1}^-1` with both
/// index lists sorted ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SeminormalWord {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl SeminormalWord {
    pub fn new(pos: Vec<u64>, neg: Vec<u64>) -> Result<Self, WordError> {
        check_sorted(&pos, "positive")?;
        check_sorted(&neg, "negative")?;
        check_cap(&pos)?;
        check_cap(&neg)?;
        Ok(SeminormalWord { pos, neg })
    }

    /// Caller guarantees both lists are sorted.
    pub(crate) fn from_sorted(pos: Vec<u64>, neg: Vec<u64>) -> Self {
        debug_assert!(pos.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(neg.windows(2).all(|w| w[0] <= w[1]));
        SeminormalWord { pos, neg }
    }

    pub fn empty() -> Self {
        SeminormalWord::default()
    }

    /// Seminormal form of a single letter (or the empty word).
    pub fn from_letter(letter: Letter) -> Self {
        match letter.sign {
            Sign::Pos => SeminormalWord { pos: alloc::vec![letter.index], neg: Vec::new() },
            Sign::Neg => SeminormalWord { pos: Vec::new(), neg: alloc::vec![letter.index] },
        }
    }

    pub fn pos(&self) -> &[u64] {
        &self.pos
    }

    pub fn neg(&self) -> &[u64] {
        &self.neg
    }

    pub fn into_parts(self) -> (Vec<u64>, Vec<u64>) {
        (self.pos, self.neg)
    }

    pub fn len(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn shift(&self, by: i64) -> Result<SeminormalWord, WordError> {
        let shift_all = |xs: &[u64]| -> Result<Vec<u64>, WordError> {
            xs.iter()
                .map(|&i| {
                    let j = shift_index(i, by)?;
                    if j > INDEX_CAP {
                        return Err(WordError::IndexCap { index: j, cap: INDEX_CAP });
                    }
                    Ok(j)
                })
                .collect()
        };
        Ok(SeminormalWord { pos: shift_all(&self.pos)?, neg: shift_all(&self.neg)? })
    }

    pub fn as_word(&self) -> Word {
        flatten(&self.pos, &self.neg)
    }

    /// First index `i` violating the bad-pair condition, if any.
    pub fn first_bad_index(&self) -> Option<u64> {
        first_bad_index(&self.pos, &self.neg)
    }
}

impl fmt::Display for SeminormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().fmt(f)
    }
}

fn first_bad_index(pos: &[u64], neg: &[u64]) -> Option<u64> {
    let occurs = |i: u64| pos.binary_search(&i).is_ok() || neg.binary_search(&i).is_ok();
    let mut prev = None;
    for &i in pos {
        if prev == Some(i) {
            continue;
        }
        prev = Some(i);
        if neg.binary_search(&i).is_ok() && !occurs(i + 1) {
            return Some(i);
        }
    }
    None
}

/// The canonical representative of an element of F.
///
/// Serializes as `{"pos":[..],"neg":[..]}`; deserialization rejects anything
/// that is not already a normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParts")]
pub struct NormalWord {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

#[derive(Deserialize)]
struct RawParts {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl TryFrom<RawParts> for NormalWord {
    type Error = WordError;

    fn try_from(raw: RawParts) -> Result<Self, Self::Error> {
        NormalWord::new(raw.pos, raw.neg)
    }
}

impl NormalWord {
    pub fn new(pos: Vec<u64>, neg: Vec<u64>) -> Result<Self, WordError> {
        let semi = SeminormalWord::new(pos, neg)?;
        NormalWord::try_from(semi)
    }

    /// Caller guarantees the normal-form conditions.
    pub(crate) fn from_parts_unchecked(pos: Vec<u64>, neg: Vec<u64>) -> Self {
        debug_assert!(first_bad_index(&pos, &neg).is_none());
        NormalWord { pos, neg }
    }

    pub fn empty() -> Self {
        NormalWord::default()
    }

    pub fn pos(&self) -> &[u64] {
        &self.pos
    }

    pub fn neg(&self) -> &[u64] {
        &self.neg
    }

    pub fn len(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.pos.last().copied().max(self.neg.last().copied())
    }

    pub fn min_index(&self) -> Option<u64> {
        match (self.pos.first(), self.neg.first()) {
            (Some(&a), Some(&b)) => Some(a.min(b)),
            (a, b) => a.or(b).copied(),
        }
    }

    pub fn as_word(&self) -> Word {
        flatten(&self.pos, &self.neg)
    }

    pub fn as_seminormal(&self) -> SeminormalWord {
        SeminormalWord { pos: self.pos.clone(), neg: self.neg.clone() }
    }

    pub fn into_seminormal(self) -> SeminormalWord {
        SeminormalWord { pos: self.pos, neg: self.neg }
    }

    /// The inverse element, which is again a normal form.
    pub fn inverse(&self) -> NormalWord {
        NormalWord { pos: self.neg.clone(), neg: self.pos.clone() }
    }

    /// `{"pos":[..],"neg":[..]}` with no whitespace.
    pub fn to_canonical_json(&self) -> String {
        use core::fmt::Write;
        let mut out = String::with_capacity(16 + 4 * self.len());
        let list = |out: &mut String, xs: &[u64]| {
            out.push('[');
            for (k, i) in xs.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write!(out, "{i}").unwrap();
            }
            out.push(']');
        };
        out.push_str("{\"pos\":");
        list(&mut out, &self.pos);
        out.push_str(",\"neg\":");
        list(&mut out, &self.neg);
        out.push('}');
        out
    }
}

impl TryFrom<SeminormalWord> for NormalWord {
    type Error = WordError;

    fn try_from(semi: SeminormalWord) -> Result<Self, Self::Error> {
        if let Some(index) = semi.first_bad_index() {
            return Err(WordError::BadPair { index });
        }
        Ok(NormalWord { pos: semi.pos, neg: semi.neg })
    }
}

impl From<NormalWord> for SeminormalWord {
    fn from(w: NormalWord) -> Self {
        w.into_seminormal()
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(w("x3").shift(2).unwrap(), w("x5"));
        let u = w("x0 x4^-1 x2");
        assert_eq!(u.shift(0).unwrap(), u);
        assert_eq!(w("x0 x4^-1").shift(-1), Err(WordError::NegativeIndex { index: 0, shift: -1 }));
        let semi = SeminormalWord::new(vec![1, 3], vec![2]).unwrap();
        assert_eq!(semi.shift(-1).unwrap(), SeminormalWord::new(vec![0, 2], vec![1]).unwrap());
        assert!(semi.shift(-2).is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("x0 x1^-1").invert(), w("x1 x0^-1"));
        assert_eq!(Word::new().invert(), Word::new());
        assert_eq!(w("x2^-1 x3").invert(), w("x3^-1 x2"));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("x0").concat(&w("x1")), w("x0 x1"));
        assert_eq!(Word::new().concat(&w("x4 x1^-1")), w("x4 x1^-1"));
        let c = w("x1").concat(&w("x1^-1"));
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_string(), "x1 x1^-1");
    }

    #[test]
    fn as_word_examples() {
        let semi = SeminormalWord::new(vec![0, 2], vec![0, 1]).unwrap();
        assert_eq!(semi.as_word(), w("x0 x2 x1^-1 x0^-1"));
        assert_eq!(SeminormalWord::empty().as_word(), Word::new());
        assert_eq!(SeminormalWord::new(vec![1], vec![]).unwrap().as_word(), w("x1"));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("").to_string(), "1");
        assert_eq!(w("1"), Word::new());
        assert_eq!(w("  x10   x0^-1 ").letters(), &[Letter::pos(10), Letter::neg(0)]);
        for bad in ["y1", "x", "x-1", "x1^1", "x1^-2", "x+1"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
        let too_big = alloc::format!("x{}", INDEX_CAP + 1);
        assert!(matches!(too_big.parse::<Word>(), Err(WordError::IndexCap { .. })));
    }

    #[test]
    fn letter_cap() {
        assert!(Letter::new(INDEX_CAP, Sign::Pos).is_ok());
        assert!(Letter::new(INDEX_CAP + 1, Sign::Neg).is_err());
        assert!(Letter::pos(INDEX_CAP).shift(1).is_err());
    }

    #[test]
    fn normal_word_validation() {
        assert!(NormalWord::new(vec![], vec![]).is_ok());
        assert_eq!(NormalWord::new(vec![2, 1], vec![]), Err(WordError::Unsorted { part: "positive" }));
        assert_eq!(NormalWord::new(vec![5], vec![5]), Err(WordError::BadPair { index: 5 }));
        assert!(NormalWord::new(vec![5, 6], vec![5]).is_ok());
        assert!(NormalWord::new(vec![5], vec![5, 6]).is_ok());
        assert_eq!(NormalWord::new(vec![0, 2, 2], vec![0, 2]), Err(WordError::BadPair { index: 0 }));
    }

    #[test]
    fn canonical_json_matches_serde() {
        let nw = NormalWord::new(vec![0, 2, 7], vec![1, 4]).unwrap();
        let json = nw.to_canonical_json();
        assert_eq!(json, r#"{"pos":[0,2,7],"neg":[1,4]}"#);
        assert_eq!(serde_json::to_string(&nw).unwrap(), json);
        assert_eq!(serde_json::from_str::<NormalWord>(&json).unwrap(), nw);
        assert_eq!(NormalWord::empty().to_canonical_json(), r#"{"pos":[],"neg":[]}"#);
        assert!(serde_json::from_str::<NormalWord>(r#"{"pos":[3],"neg":[3]}"#).is_err());
        assert!(serde_json::from_str::<NormalWord>(r#"{"pos":[3,1],"neg":[]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn letter() -> impl Strategy<Value = Letter> {
            (0u64..20, any::<bool>()).prop_map(|(i, p)| if p { Letter::pos(i) } else { Letter::neg(i) })
        }

        fn word() -> impl Strategy<Value = Word> {
            proptest::collection::vec(letter(), 0..30).prop_map(Word::from_letters)
        }

        proptest! {
            #[test]
            fn text_round_trip(u in word()) {
                prop_assert_eq!(u.to_string().parse::<Word>().unwrap(), u);
            }

            #[test]
            fn invert_is_involution(u in word()) {
                prop_assert_eq!(u.invert().invert(), u);
            }

            #[test]
            fn concat_adds_lengths(u in word(), v in word()) {
                prop_assert_eq!(u.concat(&v).len(), u.len() + v.len());
            }

            #[test]
            fn shift_round_trip(u in word(), by in 0i64..50) {
                prop_assert_eq!(u.shift(by).unwrap().shift(-by).unwrap(), u);
            }
        }
    }
}
