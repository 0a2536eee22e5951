//! `(k − ell)`-Borda-`ell`-CC: seat `k − ell` candidates as k-Borda would,
//! then add the `ell` candidates maximizing the beta-CC score of the whole
//! committee. Ties in either stage are all kept.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::combinatorics::{binomial, for_each_combination};
use crate::election::{Committee, Election};
use crate::error::{Error, Result};
use crate::rules::cc::cc_score_pos;
use crate::rules::scoring::{scores, top_k_ties, Scoring};
use crate::rules::WinnerSet;

pub fn hybrid_winners(e: &Election, k: usize, ell: usize) -> Result<WinnerSet> {
    hybrid_winners_with(e, k, ell, &Budget::default())
}

pub fn hybrid_winners_with(e: &Election, k: usize, ell: usize, budget: &Budget) -> Result<WinnerSet> {
    let m = e.num_candidates();
    if k == 0 || k > m {
        return Err(Error::domain(format!("committee size {k} outside 1..={m}")));
    }
    if ell > k {
        return Err(Error::domain(format!("ell={ell} exceeds k={k}")));
    }
    let borda_seats = k - ell;
    let first: Vec<Committee> = if borda_seats == 0 {
        vec![Committee::from_sorted(Vec::new())]
    } else {
        let s = scores(e, Scoring::Borda);
        top_k_ties(&s, borda_seats, budget)?.iter().cloned().collect()
    };
    let per_branch = binomial(m - borda_seats, ell);
    if per_branch.saturating_mul(first.len() as u128) > u128::from(budget.max_committees) {
        return Err(Error::resource("hybrid committees", budget.max_committees));
    }

    let pos = e.positions();
    let mut out = BTreeSet::new();
    for base in first {
        let rest: Vec<usize> = (0..m).filter(|&c| !base.contains(c)).collect();
        let mut best = i64::MIN;
        let mut local: Vec<Vec<usize>> = Vec::new();
        let _ = for_each_combination(&rest, ell, |extra| {
            let mut members = base.members().to_vec();
            members.extend_from_slice(extra);
            members.sort_unstable();
            let s = cc_score_pos(&pos, m, &members);
            if s > best {
                best = s;
                local.clear();
            }
            if s == best {
                local.push(members);
            }
            ControlFlow::Continue(())
        });
        out.extend(local.into_iter().map(Committee::from_sorted));
    }
    Ok(WinnerSet::new(k, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{winners, RuleSpec};

    fn sample() -> Election {
        Election::from_votes(
            5,
            vec![
                vec![0, 1, 2, 3, 4],
                vec![3, 1, 0, 4, 2],
                vec![4, 2, 1, 0, 3],
                vec![2, 4, 3, 1, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn degenerate_ell_values() {
        let e = sample();
        for k in 1..=3 {
            assert_eq!(
                hybrid_winners(&e, k, 0).unwrap(),
                winners(&e, &RuleSpec::kborda(k)).unwrap()
            );
            assert_eq!(
                hybrid_winners(&e, k, k).unwrap(),
                winners(&e, &RuleSpec::beta_cc(k)).unwrap()
            );
        }
    }

    #[test]
    fn ell_above_k_is_rejected() {
        assert!(hybrid_winners(&sample(), 2, 3).is_err());
    }
}
