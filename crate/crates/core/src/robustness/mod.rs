//! How far a single adjacent swap can move a rule's outcome.
//!
//! The displacement of a swap is the largest number of members any old
//! winning committee must lose to reach the closest new winning committee.
//! The robustness level of a rule is the supremum of displacements, so any
//! observed displacement is a certified lower bound.

mod constructions;
mod refinement;

pub use constructions::{construct_cc_chaos, construct_gws_chaos, construct_hybrid_level, construct_stv_chaos};
pub use refinement::compute_refinement;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::election::{Committee, Election, ElectionJson, Swap};
use crate::error::{Error, Result};
use crate::rules::{winners_with, RuleSpec, WinnerSet};
use crate::sampling::{sample_election, Distribution, Source};

/// One swap together with the old committee that moved the furthest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelWitness {
    pub election: Election,
    pub swap: Swap,
    pub old_committee: Committee,
    pub achieved_displacement: usize,
}

#[derive(Serialize)]
pub struct LevelWitnessJson {
    pub election: ElectionJson,
    pub swap: Swap,
    pub old_committee: Vec<String>,
    pub displacement: usize,
}

impl LevelWitness {
    pub fn to_json(&self) -> LevelWitnessJson {
        LevelWitnessJson {
            election: self.election.to_json(),
            swap: self.swap,
            old_committee: self.old_committee.names(&self.election),
            displacement: self.achieved_displacement,
        }
    }
}

/// `max_{W ∈ before} min_{W' ∈ after} (k − |W ∩ W'|)` with the maximizing `W`.
pub fn displacement_between(before: &WinnerSet, after: &WinnerSet) -> (usize, Committee) {
    let k = before.k();
    let mut best: Option<(usize, &Committee)> = None;
    for w in before.iter() {
        let d = after
            .iter()
            .map(|w2| k - w.intersection_size(w2))
            .min()
            .unwrap_or(k);
        if best.is_none_or(|(b, _)| d > b) {
            best = Some((d, w));
        }
    }
    let (d, w) = best.expect("winner sets are nonempty");
    (d, w.clone())
}

pub fn displacement(spec: &RuleSpec, e: &Election, s: Swap) -> Result<usize> {
    Ok(displacement_witness(spec, e, s, &Budget::default())?.achieved_displacement)
}

pub fn displacement_witness(spec: &RuleSpec, e: &Election, s: Swap, budget: &Budget) -> Result<LevelWitness> {
    let before = winners_with(e, spec, budget)?;
    let after = winners_with(&e.apply_swap(s)?, spec, budget)?;
    let (d, w) = displacement_between(&before, &after);
    Ok(LevelWitness {
        election: e.clone(),
        swap: s,
        old_committee: w,
        achieved_displacement: d,
    })
}

/// Sampling setup for [`empirical_level`].
#[derive(Debug, Clone)]
pub struct LevelSearch {
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub source: Source,
    /// Instances always evaluated in addition to the random trials.
    pub pool: Vec<(Election, Swap)>,
}

impl LevelSearch {
    pub fn new(m: usize, n: usize, trials: usize, seed: u64) -> Self {
        LevelSearch {
            m,
            n,
            trials,
            seed,
            source: Source::from(Distribution::ImpartialCulture),
            pool: Vec::new(),
        }
    }
}

/// Largest displacement over the pool plus `trials` random
/// (election, swap) pairs, with the instance attaining it.
pub fn empirical_level(spec: &RuleSpec, search: &LevelSearch, budget: &Budget) -> Result<LevelWitness> {
    if search.trials == 0 && search.pool.is_empty() {
        return Err(Error::domain("empirical level needs at least one trial or pool instance"));
    }
    if search.trials > 0 && (search.m < 2 || search.n == 0) {
        return Err(Error::domain("random trials need m ≥ 2 and n ≥ 1"));
    }
    let pooled = search
        .pool
        .par_iter()
        .map(|(e, s)| displacement_witness(spec, e, *s, budget));
    let sampled = (0..search.trials).into_par_iter().map(|t| {
        let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
        rng.set_stream(t as u64);
        let e = sample_election(&search.source, search.m, search.n, &mut rng)?;
        let s = e.slot_swap(rng.gen_range(0..e.swap_slots()));
        displacement_witness(spec, &e, s, budget)
    });
    let all: Vec<LevelWitness> = pooled.chain(sampled).collect::<Result<_>>()?;
    // first maximum keeps the result independent of thread scheduling
    let mut best = 0;
    for (i, w) in all.iter().enumerate() {
        if w.achieved_displacement > all[best].achieved_displacement {
            best = i;
        }
    }
    Ok(all.into_iter().nth(best).expect("at least one instance"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irrelevant_swap_has_zero_displacement() {
        // swapping the two bottom candidates cannot affect SNTV
        let e = Election::from_votes(3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(displacement(&RuleSpec::sntv(1), &e, Swap::new(0, 1)).unwrap(), 0);
    }

    #[test]
    fn cc_chaos_moves_whole_committee() {
        let (e, s) = construct_cc_chaos(2).unwrap();
        assert_eq!(displacement(&RuleSpec::beta_cc(2), &e, s).unwrap(), 2);
    }

    #[test]
    fn empty_search_is_rejected() {
        let search = LevelSearch::new(4, 3, 0, 1);
        assert!(empirical_level(&RuleSpec::sntv(2), &search, &Budget::default()).is_err());
    }

    #[test]
    fn pool_dominates_random_trials() {
        let mut search = LevelSearch::new(5, 3, 20, 9);
        search.pool.push(construct_cc_chaos(3).unwrap());
        let w = empirical_level(&RuleSpec::beta_cc(3), &search, &Budget::default()).unwrap();
        assert_eq!(w.achieved_displacement, 3);
    }
}
