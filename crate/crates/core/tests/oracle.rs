mod common;

use common::{all_words, random_word};
use thompson_core::oracle::{oracle_erase, oracle_normal, oracle_seminormal, oracle_seminormal_with};
use thompson_core::{NormalWord, SeededRng, Word};

#[test]
fn rewriting_is_confluent_on_short_words() {
    let mut rng = SeededRng::new(2024);
    for len in 0..=6 {
        for w in all_words(len, 4) {
            let canonical = oracle_seminormal(&w);
            for _ in 0..10 {
                let other = oracle_seminormal_with(&w, |n| rng.below(n));
                assert_eq!(other, canonical, "strategy dependence on {w}");
            }
        }
    }
}

#[test]
fn oracle_output_is_normal_and_idempotent() {
    let mut rng = SeededRng::new(5);
    for _ in 0..2000 {
        let len = rng.below(60);
        let w = random_word(&mut rng, len, 6);
        let n = oracle_normal(&w);
        // NormalWord::new re-checks sortedness and the bad-pair condition
        assert_eq!(NormalWord::new(n.pos().to_vec(), n.neg().to_vec()).unwrap(), n);
        assert_eq!(oracle_normal(&n.as_word()), n);
        assert_eq!(oracle_erase(&n.as_seminormal()), n);
    }
}

#[test]
fn group_axioms_through_oracle() {
    let mut rng = SeededRng::new(6);
    for _ in 0..500 {
        let pick = |rng: &mut SeededRng| {
            let len = rng.below(25);
            random_word(rng, len, 5)
        };
        let (u, v, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        assert!(oracle_normal(&u.concat(&u.invert())).is_empty());
        assert!(oracle_normal(&u.invert().concat(&u)).is_empty());
        assert_eq!(oracle_normal(&u.concat(&v).concat(&z)), oracle_normal(&u.concat(&v.concat(&z))));
        let uv = oracle_normal(&u.concat(&v)).as_word();
        assert_eq!(oracle_normal(&uv.concat(&z)), oracle_normal(&u.concat(&v).concat(&z)));
    }
}

#[test]
fn defining_relations_hold_in_oracle() {
    for i in 0..8u64 {
        for k in i + 1..10 {
            let w: Word = format!("x{i}^-1 x{k} x{i}").parse().unwrap();
            assert_eq!(oracle_normal(&w), NormalWord::new(vec![k + 1], vec![]).unwrap());
        }
    }
}
