mod common;

use committee_robustness::robustness::{
    compute_refinement, construct_cc_chaos, construct_gws_chaos, construct_hybrid_level, construct_stv_chaos,
    displacement, empirical_level, LevelSearch,
};
use committee_robustness::{winners, Budget, Committee, RuleSpec, StvTies};
use num_rational::Ratio;

#[test]
fn cc_chaos_displaces_every_member() {
    for k in 1..=5 {
        let (e, s) = construct_cc_chaos(k).unwrap();
        assert_eq!(e.num_voters(), 2 * k - 1);
        assert_eq!(displacement(&RuleSpec::beta_cc(k), &e, s).unwrap(), k, "k={k}");
    }
}

#[test]
fn empirical_level_finds_the_seeded_worst_case() {
    let k = 3;
    let mut search = LevelSearch::new(5, 5, 50, 9);
    search.pool.push(construct_cc_chaos(k).unwrap());
    let w = empirical_level(&RuleSpec::beta_cc(k), &search, &Budget::default()).unwrap();
    assert_eq!(w.achieved_displacement, k);
    assert_eq!(w.to_json().displacement, k);
}

#[test]
fn score_rules_level_is_one_on_random_trials() {
    let search = LevelSearch::new(5, 5, 300, 21);
    for spec in [RuleSpec::kborda(2), RuleSpec::copeland(2, Ratio::new(1, 2))] {
        let w = empirical_level(&spec, &search, &Budget::default()).unwrap();
        assert!(w.achieved_displacement <= 1, "{spec}");
    }
}

#[test]
fn hybrid_displacement_is_ell_or_ell_plus_one() {
    for k in 2..=5 {
        for ell in 1..k {
            let (e, s) = construct_hybrid_level(k, ell).unwrap();
            let d = displacement(&RuleSpec::hybrid(k, ell), &e, s).unwrap();
            assert!((ell..=ell + 1).contains(&d), "k={k} ell={ell}: displacement {d}");
        }
    }
}

#[test]
fn stv_chaos_makes_the_other_half_a_winner() {
    let budget = Budget::default();
    for k in 2..=3 {
        let (e, s) = construct_stv_chaos(k, &budget).unwrap();
        let spec = RuleSpec::stv(k, StvTies::ParallelUniverses);
        let before = winners(&e, &spec).unwrap();
        let after = winners(&e.apply_swap(s).unwrap(), &spec).unwrap();
        let a = Committee::new((0..k).collect()).unwrap();
        let b = Committee::new((k..2 * k).collect()).unwrap();
        assert_eq!(before.unique(), Some(&a), "k={k}");
        assert!(after.contains(&b), "k={k}");
    }
}

#[test]
fn gws_chaos_grows_with_k() {
    for k in 3..=5 {
        let (e, s) = construct_gws_chaos(k).unwrap();
        assert!(e.apply_swap(s).is_ok());
        assert_eq!(e.num_candidates(), 2 * k + 1);
    }
}

#[test]
fn refinement_lands_in_the_winner_set() {
    let mut rng = common::rng(77);
    for i in 0..150 {
        let m = 3 + i % 4;
        let k = 1 + i % (m - 1);
        let e = common::random_election(m, 1 + i % 6, &mut rng);
        for spec in [
            RuleSpec::sntv(k),
            RuleSpec::bloc(k),
            RuleSpec::kborda(k),
            RuleSpec::copeland(k, Ratio::new(1, 2)),
        ] {
            let w = compute_refinement(&spec, &e).unwrap();
            assert!(winners(&e, &spec).unwrap().contains(&w), "{spec} on {e:?}");
        }
    }
    assert!(compute_refinement(&RuleSpec::beta_cc(1), &common::random_election(3, 2, &mut rng)).is_err());
}
