//! Structural facts about STV used to bound its search space.

use crate::budget::Budget;
use crate::election::Election;
use crate::error::{Error, Result};
use crate::rules::stv::{stv_is_normal, stv_parallel};

/// One-based rank of each candidate: its best position over all votes.
pub fn stv_ranks(e: &Election) -> Vec<usize> {
    let mut rank = vec![usize::MAX; e.num_candidates()];
    for v in e.votes() {
        for (p, &c) in v.iter().enumerate() {
            rank[c] = rank[c].min(p + 1);
        }
    }
    rank
}

/// True when no candidate of rank above `n` is in any winning committee
/// under parallel-universes tie-breaking.
pub fn stv_rank_lemma_check(e: &Election, k: usize, budget: &Budget) -> Result<bool> {
    let n = e.num_voters();
    if !stv_is_normal(n, k) {
        return Err(Error::domain(format!("k={k} is not normal for n={n} voters")));
    }
    let rank = stv_ranks(e);
    let w = stv_parallel(e, k, budget)?;
    let holds = w.iter().all(|c| c.members().iter().all(|&x| rank[x] <= n));
    Ok(holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::robustness::construct_stv_chaos;

    #[test]
    fn ranks() {
        let e = Election::from_votes(3, vec![vec![2, 0, 1], vec![2, 1, 0]]).unwrap();
        assert_eq!(stv_ranks(&e), vec![2, 2, 1]);
    }

    #[test]
    fn holds_on_the_chaos_profile() {
        let b = Budget::default();
        let (e, _) = construct_stv_chaos(2, &b).unwrap();
        assert!(stv_rank_lemma_check(&e, 2, &b).unwrap());
    }

    #[test]
    fn non_normal_is_rejected() {
        let e = Election::from_votes(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(stv_rank_lemma_check(&e, 2, &Budget::default()).is_err());
    }
}
