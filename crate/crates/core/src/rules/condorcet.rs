//! Majority-based rules: k-Copeland^alpha, NED and Gehrlein stability.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use num_rational::Ratio;

use crate::budget::Budget;
use crate::combinatorics::{binomial, for_each_combination};
use crate::election::{Committee, Election};
use crate::error::{Error, Result};
use crate::majority::margins;
use crate::rules::WinnerSet;

/// Copeland^alpha scores multiplied by the denominator of `alpha`.
pub fn copeland_scores(e: &Election, alpha: Ratio<i64>) -> Vec<i64> {
    let margin = margins(e);
    let (num, den) = (*alpha.numer(), *alpha.denom());
    let m = e.num_candidates();
    (0..m)
        .map(|c| {
            let mut s = 0;
            for d in 0..m {
                if d == c {
                    continue;
                }
                match margin[c][d].signum() {
                    1 => s += den,
                    0 => s += num,
                    _ => {}
                }
            }
            s
        })
        .collect()
}

/// Number of (member, non-member) pairs where at least half the voters
/// prefer the member.
pub fn ned_score(margin: &[Vec<i64>], s: &Committee) -> i64 {
    let m = margin.len();
    let mask = s.mask(m);
    let mut score = 0;
    for &c in s.members() {
        for d in (0..m).filter(|&d| !mask[d]) {
            if margin[c][d] >= 0 {
                score += 1;
            }
        }
    }
    score
}

/// All committees of maximum NED score, by exhaustive enumeration.
pub fn ned_winners(e: &Election, k: usize, budget: &Budget) -> Result<WinnerSet> {
    let m = e.num_candidates();
    if binomial(m, k) > u128::from(budget.max_committees) {
        return Err(Error::resource("NED committees", budget.max_committees));
    }
    let margin = margins(e);
    let all: Vec<usize> = (0..m).collect();
    let mut best = i64::MIN;
    let mut out = BTreeSet::new();
    let _ = for_each_combination(&all, k, |pick| {
        let c = Committee::from_sorted(pick.to_vec());
        let s = ned_score(&margin, &c);
        if s > best {
            best = s;
            out.clear();
        }
        if s == best {
            out.insert(c);
        }
        ControlFlow::Continue(())
    });
    Ok(WinnerSet::new(k, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    /// More than half the voters prefer each member to each non-member.
    Strong,
    /// At least half do.
    Weak,
}

pub fn gehrlein_stable(e: &Election, s: &Committee, mode: Stability) -> bool {
    stable_under(&margins(e), s, mode)
}

pub(crate) fn stable_under(margin: &[Vec<i64>], s: &Committee, mode: Stability) -> bool {
    let m = margin.len();
    let mask = s.mask(m);
    s.members().iter().all(|&c| {
        (0..m).filter(|&d| !mask[d]).all(|d| match mode {
            Stability::Strong => margin[c][d] > 0,
            Stability::Weak => margin[c][d] >= 0,
        })
    })
}

/// Every size-k committee that is stable in the given mode.
pub fn stable_committees(e: &Election, k: usize, mode: Stability) -> BTreeSet<Committee> {
    let margin = margins(e);
    let all: Vec<usize> = (0..e.num_candidates()).collect();
    let mut out = BTreeSet::new();
    let _ = for_each_combination(&all, k, |pick| {
        let c = Committee::from_sorted(pick.to_vec());
        if stable_under(&margin, &c, mode) {
            out.insert(c);
        }
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{winners, RuleSpec};

    #[test]
    fn copeland_halves_stay_integral() {
        // c1 vs c2 tie, both beat c3
        let e = Election::from_votes(3, vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        assert_eq!(copeland_scores(&e, Ratio::new(1, 2)), vec![3, 3, 0]);
        assert_eq!(copeland_scores(&e, Ratio::from_integer(0)), vec![1, 1, 0]);
        assert_eq!(copeland_scores(&e, Ratio::from_integer(1)), vec![2, 2, 0]);
    }

    #[test]
    fn stability_boundaries() {
        let e = Election::from_votes(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let s = Committee::new(vec![0]).unwrap();
        assert!(gehrlein_stable(&e, &s, Stability::Weak));
        assert!(!gehrlein_stable(&e, &s, Stability::Strong));

        let e = Election::from_votes(3, vec![vec![0, 1, 2]; 3]).unwrap();
        let top = Committee::new(vec![0, 1]).unwrap();
        assert!(gehrlein_stable(&e, &top, Stability::Weak));
        assert!(gehrlein_stable(&e, &top, Stability::Strong));
    }

    #[test]
    fn ned_picks_condorcet_committee() {
        let e = Election::from_votes(4, vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![0, 1, 3, 2]])
            .unwrap();
        let w = winners(&e, &RuleSpec::ned(2)).unwrap();
        assert_eq!(w.unique().unwrap().members(), &[0, 1]);
    }
}
