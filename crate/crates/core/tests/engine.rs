mod common;

use common::{all_words, random_word};
use proptest::prelude::*;
use thompson_core::engine::{
    erase_bad_pairs, erase_bad_pairs_probed, merge, merge_neg_neg, merge_neg_pos, merge_pos_pos, multiply,
    normal_form, normal_form_probed, seminormal_form, Counter,
};
use thompson_core::oracle::{oracle_erase, oracle_normal, oracle_seminormal};
use thompson_core::{NormalWord, SeededRng, SeminormalWord, Word};

#[test]
fn matches_oracle_exhaustively_up_to_five_letters() {
    for len in 0..=5 {
        for w in all_words(len, 4) {
            assert_eq!(normal_form(&w), oracle_normal(&w), "{w}");
        }
    }
}

#[test]
fn matches_oracle_on_random_words() {
    let mut rng = SeededRng::new(99);
    for _ in 0..2000 {
        let len = 1 + rng.below(200);
        let w = random_word(&mut rng, len, 10);
        assert_eq!(normal_form(&w), oracle_normal(&w), "{w}");
    }
}

#[test]
fn seminormal_forms_agree_after_erasure() {
    // seminormal forms are not unique, but erasing bad pairs from either
    // side must land on the same normal form
    let mut rng = SeededRng::new(3);
    for _ in 0..1000 {
        let len = rng.below(80);
        let w = random_word(&mut rng, len, 6);
        let fast = seminormal_form(&w);
        let slow = oracle_seminormal(&w);
        assert_eq!(erase_bad_pairs(&fast), oracle_erase(&slow));
        assert_eq!(erase_bad_pairs(&slow), oracle_erase(&fast));
    }
}

#[test]
fn defining_relations() {
    for i in 0..=12u64 {
        for k in i + 1..=12 {
            let w: Word = format!("x{i}^-1 x{k} x{i}").parse().unwrap();
            assert_eq!(normal_form(&w), NormalWord::new(vec![k + 1], vec![]).unwrap());
        }
    }
}

#[test]
fn bad_pairs_are_found_outside_in() {
    let mut rng = SeededRng::new(17);
    let mut seen = 0;
    for _ in 0..3000 {
        let len = rng.below(120);
        let w = random_word(&mut rng, len, 4);
        let semi = seminormal_form(&w);
        let mut probe = Counter::default();
        let out = erase_bad_pairs_probed(&semi, &mut probe);
        assert_eq!(out, oracle_erase(&semi));
        for pair in probe.bad_pairs.windows(2) {
            assert!(pair[1].0 < pair[0].0 && pair[1].1 < pair[0].1, "{:?}", probe.bad_pairs);
        }
        seen += probe.bad_pairs.len();
    }
    assert!(seen > 100, "too few bad pairs exercised: {seen}");
}

#[test]
fn normal_input_is_unchanged() {
    let mut rng = SeededRng::new(8);
    for _ in 0..1000 {
        let len = rng.below(100);
        let n = normal_form(&random_word(&mut rng, len, 8));
        assert_eq!(normal_form(&n.as_word()), n);
        assert_eq!(erase_bad_pairs(&n.as_seminormal()), n);
    }
}

#[test]
fn visits_grow_like_n_log_n() {
    let mut rng = SeededRng::new(1);
    let visits = |n: usize, rng: &mut SeededRng| {
        let w = random_word(rng, n, 10);
        let mut probe = Counter::default();
        normal_form_probed(&w, &mut probe);
        probe.visits as f64
    };
    let c = visits(1 << 10, &mut rng) / ((1 << 10) as f64 * 10.0);
    for exp in 11..=16 {
        let n = 1usize << exp;
        assert!(visits(n, &mut rng) <= c * n as f64 * exp as f64, "n = {n}");
    }
}

fn letter_strategy() -> impl Strategy<Value = thompson_core::Letter> {
    (0u64..8, any::<bool>()).prop_map(|(i, p)| {
        if p {
            thompson_core::Letter::pos(i)
        } else {
            thompson_core::Letter::neg(i)
        }
    })
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(letter_strategy(), 0..max).prop_map(Word::from_letters)
}

fn sorted(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0u64..12, 0..max_len).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

fn negative_word(idx: &[u64]) -> Word {
    SeminormalWord::new(vec![], idx.to_vec()).unwrap().as_word()
}

fn positive_word(idx: &[u64]) -> Word {
    SeminormalWord::new(idx.to_vec(), vec![]).unwrap().as_word()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn merge_is_a_homomorphism(u in word_strategy(40), v in word_strategy(40)) {
        let (su, sv) = (seminormal_form(&u), seminormal_form(&v));
        let merged = merge(&su, &sv);
        prop_assert_eq!(normal_form(&merged.as_word()), normal_form(&su.as_word().concat(&sv.as_word())));
        prop_assert_eq!(erase_bad_pairs(&merged), oracle_normal(&u.concat(&v)));
    }

    #[test]
    fn shifted_merges_match_oracle(n in sorted(12), p in sorted(12), e1 in 0i64..4, e2 in 0i64..4) {
        let word = negative_word(&n).shift(e1).unwrap().concat(&positive_word(&p).shift(e2).unwrap());
        let got = merge_neg_pos(&n, &p, e1, e2);
        prop_assert_eq!(erase_bad_pairs(&got), oracle_normal(&word));
        // Merge_{-,+} already yields an R-reduced word
        prop_assert_eq!(got, oracle_seminormal(&word));

        let word = positive_word(&n).shift(e1).unwrap().concat(&positive_word(&p).shift(e2).unwrap());
        prop_assert_eq!(merge_pos_pos(&n, &p, e1, e2), oracle_seminormal(&word));

        let word = negative_word(&n).shift(e1).unwrap().concat(&negative_word(&p).shift(e2).unwrap());
        prop_assert_eq!(merge_neg_neg(&n, &p, e1, e2), oracle_seminormal(&word));
    }

    #[test]
    fn inverse_cancels(u in word_strategy(60)) {
        prop_assert!(normal_form(&u.concat(&u.invert())).is_empty());
        let n = normal_form(&u);
        prop_assert!(multiply(&n, &n.inverse()).is_empty());
        prop_assert_eq!(n.inverse(), normal_form(&u.invert()));
    }
}
