use thompson_core::engine::normal_form;
use thompson_core::Sign;
use thompson_tools::attack::{AttackBudget, Outcome};
use thompson_tools::sweep::{attack_sweep, GridPoint, Instance};

fn budget(nodes: u64) -> AttackBudget {
    AttackBudget::new(nodes, 120.0).unwrap()
}

#[test]
fn successes_are_sound() {
    let mut wins = 0;
    for (s, m) in [(2, 4), (2, 6), (3, 4)] {
        for seed in 0..15 {
            let inst = Instance::generate(GridPoint { s, m }, seed).unwrap();
            let r = inst.attack(budget(20_000));
            let Some(f) = r.factors else {
                assert_eq!(r.outcome, Outcome::BudgetExhausted);
                continue;
            };
            wins += 1;
            assert_eq!(r.outcome, Outcome::Success);
            assert_eq!(f.apply(inst.params.base()), inst.token);
            let spelled = f.left_word().concat(&inst.params.base().as_word()).concat(&f.right_word());
            assert_eq!(normal_form(&spelled), inst.token);
            // x1 is a product of x0 x_k^-1 and x_k x0^-1 with 1 <= k <= s
            for pair in f.left_word().letters().chunks(2) {
                let (a, b) = (pair[0], pair[1]);
                assert!(a.is_pos() && b.sign() == Sign::Neg);
                let k = a.index().max(b.index());
                assert!(a.index().min(b.index()) == 0 && (1..=s).contains(&k));
            }
            for l in f.right_word().letters() {
                assert!((s + 1..=2 * s).contains(&l.index()));
            }
        }
    }
    assert!(wins >= 40, "{wins}");
}

#[test]
fn search_is_deterministic() {
    let inst = Instance::generate(GridPoint { s: 2, m: 8 }, 4).unwrap();
    let a = inst.attack(budget(3_000));
    let b = inst.attack(budget(3_000));
    assert_eq!((a.outcome, a.nodes_expanded, a.vertices), (b.outcome, b.nodes_expanded, b.vertices));
    assert_eq!(a.frontier_sizes, b.frontier_sizes);
    assert_eq!(a.factors, b.factors);
}

#[test]
fn frontier_samples_are_monotone() {
    let inst = Instance::generate(GridPoint { s: 3, m: 32 }, 2).unwrap();
    let r = inst.attack(budget(2_560));
    assert_eq!(r.outcome, Outcome::BudgetExhausted);
    assert_eq!(r.frontier_sizes.len(), 256);
    for w in r.frontier_sizes.windows(2) {
        assert!(w[0].expanded < w[1].expanded);
        assert!(w[0].base_side <= w[1].base_side && w[0].token_side <= w[1].token_side);
    }
    // each expansion adds at most 4s new vertices
    let last = r.frontier_sizes.last().unwrap();
    assert!(last.base_side + last.token_side <= 2 + 12 * last.expanded);
}

#[test]
fn sweep_is_independent_of_parallelism() {
    let grid = [GridPoint { s: 2, m: 4 }, GridPoint { s: 2, m: 8 }];
    let strip = |r: &thompson_tools::sweep::SweepResult| {
        r.trials.iter().map(|t| (t.s, t.m, t.trial, t.outcome, t.nodes)).collect::<Vec<_>>()
    };
    let serial = attack_sweep(&grid, 4, budget(5_000), 17, 1).unwrap();
    let parallel = attack_sweep(&grid, 4, budget(5_000), 17, 3).unwrap();
    assert_eq!(strip(&serial), strip(&parallel));
    assert_eq!(serial.summary.len(), 2);
    let p = &serial.summary[0];
    assert_eq!(p.trials, 4);
    assert_eq!(p.success_rate, p.successes as f64 / 4.0);
}
