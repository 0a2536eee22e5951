mod common;

use committee_robustness::combinatorics::combinations;
use committee_robustness::rules::cc::{cc_score, cc_winners_exhaustive, cc_winners_partition, dissatisfaction};
use committee_robustness::rules::condorcet::{stable_committees, Stability};
use committee_robustness::rules::stv::stv_is_normal;
use committee_robustness::{winners, Budget, Committee, Election, Ranking, RuleSpec, StvTies};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn ranking(m: usize) -> impl Strategy<Value = Ranking> {
    Just((0..m).collect::<Ranking>()).prop_shuffle()
}

/// Random election with `m` in `2..=max_m`, `n` in `1..=max_n` and `k` in
/// `1..m`.
fn instance(max_m: usize, max_n: usize) -> impl Strategy<Value = (Election, usize)> {
    (2..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        (proptest::collection::vec(ranking(m), n), 1..m)
            .prop_map(move |(votes, k)| (Election::from_votes(m, votes).unwrap(), k))
    })
}

fn all_rules(k: usize, n: usize) -> Vec<RuleSpec> {
    let mut rules = vec![
        RuleSpec::sntv(k),
        RuleSpec::bloc(k),
        RuleSpec::kborda(k),
        RuleSpec::copeland(k, Ratio::from_integer(0)),
        RuleSpec::copeland(k, Ratio::new(1, 2)),
        RuleSpec::copeland(k, Ratio::from_integer(1)),
        RuleSpec::ned(k),
        RuleSpec::beta_cc(k),
    ];
    // with fewer than k quotas of voters STV ends up eliminating among
    // candidates nobody ranks first, unanimity included
    if stv_is_normal(n, k) {
        rules.push(RuleSpec::stv(k, StvTies::Lexicographic));
        rules.push(RuleSpec::stv(k, StvTies::ParallelUniverses));
    }
    rules.extend((0..=k).map(|ell| RuleSpec::hybrid(k, ell)));
    rules
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weak_unanimity(m in 2usize..=6, n in 1usize..=5, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let k = 1 + (seed as usize % (m - 1));
        let top = common::random_vote(m, &mut rng)[..k].to_vec();
        let votes: Vec<Ranking> = (0..n)
            .map(|_| {
                let mut head = top.clone();
                let mut tail: Ranking = (0..m).filter(|c| !top.contains(c)).collect();
                head.shuffle(&mut rng);
                tail.shuffle(&mut rng);
                head.extend(tail);
                head
            })
            .collect();
        let e = Election::from_votes(m, votes).unwrap();
        let s = Committee::new(top).unwrap();
        for spec in all_rules(k, n) {
            prop_assert!(winners(&e, &spec).unwrap().contains(&s), "{spec} misses the unanimous set on {e:?}");
        }
    }

    #[test]
    fn score_rules_are_one_robust((e, k) in instance(5, 5)) {
        for spec in [
            RuleSpec::sntv(k),
            RuleSpec::bloc(k),
            RuleSpec::kborda(k),
            RuleSpec::copeland(k, Ratio::from_integer(0)),
            RuleSpec::copeland(k, Ratio::new(1, 2)),
            RuleSpec::copeland(k, Ratio::from_integer(1)),
        ] {
            let before = winners(&e, &spec).unwrap();
            for slot in 0..e.swap_slots() {
                let after = winners(&e.apply_swap(e.slot_swap(slot)).unwrap(), &spec).unwrap();
                for w in before.iter() {
                    prop_assert!(after.iter().any(|w2| w.intersection_size(w2) + 1 >= k));
                }
            }
        }
    }

    #[test]
    fn ned_elects_the_weakly_stable_committees((e, k) in instance(6, 5)) {
        let stable = stable_committees(&e, k, Stability::Weak);
        if !stable.is_empty() {
            let ned = winners(&e, &RuleSpec::ned(k)).unwrap();
            prop_assert_eq!(ned.committees(), &stable);
        }
    }

    #[test]
    fn copeland_zero_elects_strongly_stable_committees((e, k) in instance(6, 5)) {
        let stable = stable_committees(&e, k, Stability::Strong);
        if !stable.is_empty() {
            let w = winners(&e, &RuleSpec::copeland(k, Ratio::from_integer(0))).unwrap();
            prop_assert!(w.iter().all(|c| stable.contains(c)));
        }
    }

    #[test]
    fn stv_lexicographic_is_one_parallel_universe((e, k) in instance(6, 6)) {
        prop_assume!(stv_is_normal(e.num_voters(), k));
        let lex = winners(&e, &RuleSpec::stv(k, StvTies::Lexicographic)).unwrap();
        let pu = winners(&e, &RuleSpec::stv(k, StvTies::ParallelUniverses)).unwrap();
        prop_assert!(lex.iter().all(|c| pu.contains(c)));
    }

    #[test]
    fn chamberlin_courant_computations_agree((e, k) in instance(6, 4)) {
        let budget = Budget::default();
        let (m, n) = (e.num_candidates(), e.num_voters());
        let items: Vec<usize> = (0..m).collect();
        let all: Vec<Committee> = combinations(&items, k).into_iter().map(|c| Committee::new(c).unwrap()).collect();
        let best = all.iter().map(|s| cc_score(&e, s)).max().unwrap();
        let least = all.iter().map(|s| dissatisfaction(&e, s).unwrap()).min().unwrap();
        for s in &all {
            prop_assert_eq!(dissatisfaction(&e, s).unwrap() + cc_score(&e, s), (n * (m - 1)) as i64);
        }
        let by_score: Vec<&Committee> = all.iter().filter(|s| cc_score(&e, s) == best).collect();
        let by_dissatisfaction: Vec<&Committee> =
            all.iter().filter(|s| dissatisfaction(&e, s).unwrap() == least).collect();
        let exhaustive = cc_winners_exhaustive(&e, k, &budget).unwrap();
        let partition = cc_winners_partition(&e, k, &budget).unwrap();
        prop_assert_eq!(&by_score, &by_dissatisfaction);
        prop_assert_eq!(exhaustive.iter().collect::<Vec<_>>(), by_score);
        prop_assert_eq!(&exhaustive, &partition);
    }

    #[test]
    fn hybrid_degenerates_to_its_parts((e, k) in instance(6, 5)) {
        prop_assert_eq!(
            winners(&e, &RuleSpec::hybrid(k, 0)).unwrap(),
            winners(&e, &RuleSpec::kborda(k)).unwrap()
        );
        prop_assert_eq!(
            winners(&e, &RuleSpec::hybrid(k, k)).unwrap(),
            winners(&e, &RuleSpec::beta_cc(k)).unwrap()
        );
    }
}

#[test]
fn rule_strings_round_trip() {
    for s in [
        "sntv:k=3",
        "copeland:k=3,alpha=0.5",
        "hybrid:k=4,ell=2",
        "stv:k=3,ties=pu",
        "stv:k=2,ties=lex",
        "cc:k=2",
        "ned:k=1",
    ] {
        let spec: RuleSpec = s.parse().unwrap();
        assert_eq!(spec.to_string().parse::<RuleSpec>().unwrap(), spec, "{s}");
    }
    for bad in ["sntv", "sntv:k=0", "hybrid:k=2", "hybrid:k=2,ell=3", "bloc:k=2,alpha=1", "copeland:k=2,alpha=2"] {
        assert!(bad.parse::<RuleSpec>().is_err(), "{bad}");
    }
}
