mod common;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use committee_robustness::election::swap_path;
use committee_robustness::preflib::{read_preflib, write_preflib};
use committee_robustness::sampling::{
    mallows_normalizer, sample_election, Distribution, MallowsSpec, Phi, PhiScope, Source,
};
use committee_robustness::{kendall_tau, Election, Ranking};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_rankings(m: usize) -> Vec<Ranking> {
    fn extend(prefix: &mut Ranking, m: usize, out: &mut Vec<Ranking>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for c in 0..m {
            if !prefix.contains(&c) {
                prefix.push(c);
                extend(prefix, m, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), m, &mut out);
    out
}

#[test]
fn normalizer_is_the_sum_over_all_rankings() {
    for m in 1..=5 {
        let id: Ranking = (0..m).collect();
        for phi in [0.1f64, 0.5, 0.9, 1.0] {
            let brute: f64 = all_rankings(m)
                .iter()
                .map(|r| phi.powi(kendall_tau(&id, r).unwrap() as i32))
                .sum();
            assert!((mallows_normalizer(m, phi) - brute).abs() < 1e-9, "m={m} phi={phi}");
        }
    }
}

#[test]
fn phi_one_is_uniform() {
    let spec = MallowsSpec::new(vec![2, 0, 3, 1], 1.0).unwrap();
    for r in all_rankings(4) {
        assert!((spec.probability(&r).unwrap() - 1.0 / 24.0).abs() < 1e-12);
    }
}

#[test]
fn probability_decays_with_distance_from_the_center() {
    let spec = MallowsSpec::new(vec![1, 3, 0, 2], 0.4).unwrap();
    let center = spec.central().to_vec();
    for r in all_rankings(4) {
        let d = kendall_tau(&center, &r).unwrap();
        let expected = 0.4f64.powi(d as i32) / mallows_normalizer(4, 0.4);
        assert!((spec.probability(&r).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn every_distribution_is_seed_deterministic() {
    let data = Arc::new(common::random_election(5, 9, &mut common::rng(4)));
    for d in [
        Distribution::ImpartialCulture,
        Distribution::Mallows { phi: Phi::Fixed(0.3) },
        Distribution::Mallows { phi: Phi::Uniform },
        Distribution::Mixture { phi: Phi::Uniform, weight: 0.5 },
        Distribution::Dataset(data),
    ] {
        for scope in [PhiScope::PerElection, PhiScope::PerVote] {
            let source = Source { distribution: d.clone(), phi_scope: scope };
            let a = sample_election(&source, 5, 20, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
            let b = sample_election(&source, 5, 20, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
            assert_eq!(a, b, "{d}");
            assert_eq!((a.num_candidates(), a.num_voters()), (5, 20));
        }
    }
}

#[test]
fn concentrated_mixtures_use_at_most_two_centers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let one = Source::from(Distribution::Mixture { phi: Phi::Fixed(1e-12), weight: 1.0 });
    let e = sample_election(&one, 6, 40, &mut rng).unwrap();
    assert_eq!(e.votes().iter().collect::<BTreeSet<_>>().len(), 1);
    let two = Source::from(Distribution::Mixture { phi: Phi::Fixed(1e-12), weight: 0.5 });
    let e = sample_election(&two, 6, 40, &mut rng).unwrap();
    assert!(e.votes().iter().collect::<BTreeSet<_>>().len() <= 2);
}

#[test]
fn dataset_votes_come_from_the_dataset() {
    let data = common::random_election(4, 3, &mut common::rng(8));
    let pool: BTreeSet<Ranking> = data.votes().iter().cloned().collect();
    let source = Source::from(Distribution::Dataset(Arc::new(data)));
    let e = sample_election(&source, 4, 200, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert!(e.votes().iter().all(|v| pool.contains(v)));
    let mut counts: HashMap<&Ranking, usize> = HashMap::new();
    for v in e.votes() {
        *counts.entry(v).or_default() += 1;
    }
    assert_eq!(counts.len(), pool.len());
    // wrong candidate count is refused
    assert!(sample_election(&source, 5, 3, &mut ChaCha8Rng::seed_from_u64(1)).is_err());
}

fn ranking(m: usize) -> impl Strategy<Value = Ranking> {
    Just((0..m).collect::<Ranking>()).prop_shuffle()
}

fn election() -> impl Strategy<Value = Election> {
    (1usize..=7, 1usize..=12).prop_flat_map(|(m, n)| {
        proptest::collection::vec(ranking(m), n).prop_map(move |v| Election::from_votes(m, v).unwrap())
    })
}

proptest! {
    #[test]
    fn preflib_round_trip(e in election()) {
        let text = write_preflib(&e);
        prop_assert_eq!(read_preflib(&text).unwrap(), e);
    }

    #[test]
    fn json_round_trip(e in election()) {
        let text = serde_json::to_string(&e.to_json()).unwrap();
        prop_assert_eq!(Election::from_json_str(&text).unwrap(), e);
    }

    #[test]
    fn swap_path_reaches_its_target(m in 1usize..=7, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b) = (common::random_vote(m, &mut rng), common::random_vote(m, &mut rng));
        let mut cur = a.clone();
        for p in swap_path(&a, &b) {
            cur.swap(p, p + 1);
        }
        prop_assert_eq!(cur, b);
    }
}
