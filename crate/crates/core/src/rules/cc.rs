//! Chamberlin-Courant with Borda satisfaction (beta-CC).
//!
//! Each voter is represented by the committee member they rank highest
//! and contributes that member's Borda score. Two exact winner-set
//! algorithms are provided: plain enumeration of all `C(m, k)` committees,
//! and enumeration of voter partitions (cheap when `n` is small).

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::combinatorics::{binomial, for_each_combination, for_each_partition, partitions_at_most};
use crate::election::{Candidate, Committee, Election};
use crate::error::{Error, Result};
use crate::rules::WinnerSet;

/// Zero-based position of the best-ranked member of `s` in each vote.
fn rep_positions<'a>(pos: &'a [Vec<usize>], s: &'a [Candidate]) -> impl Iterator<Item = usize> + 'a {
    pos.iter()
        .map(move |p| s.iter().map(|&c| p[c]).min().expect("nonempty committee"))
}

/// Total dissatisfaction: the sum over voters of the (zero-based) position
/// of their representative.
pub fn dissatisfaction(e: &Election, s: &Committee) -> Result<i64> {
    if s.is_empty() {
        return Err(Error::domain("dissatisfaction of an empty committee"));
    }
    if s.members().iter().any(|&c| c >= e.num_candidates()) {
        return Err(Error::domain("committee member outside the candidate set"));
    }
    let pos = e.positions();
    Ok(rep_positions(&pos, s.members()).map(|p| p as i64).sum())
}

/// beta-CC score: `n(m − 1)` minus the dissatisfaction.
pub fn cc_score(e: &Election, s: &Committee) -> i64 {
    let pos = e.positions();
    cc_score_pos(&pos, e.num_candidates(), s.members())
}

pub(crate) fn cc_score_pos(pos: &[Vec<usize>], m: usize, s: &[Candidate]) -> i64 {
    if s.is_empty() {
        return 0;
    }
    rep_positions(pos, s).map(|p| (m - 1 - p) as i64).sum()
}

/// Chooses between the two exact algorithms by their enumeration sizes.
pub fn cc_winners(e: &Election, k: usize, budget: &Budget) -> Result<WinnerSet> {
    let committees = binomial(e.num_candidates(), k);
    let partitions = partitions_at_most(e.num_voters(), k);
    if partitions < committees {
        cc_winners_partition(e, k, budget)
    } else {
        cc_winners_exhaustive(e, k, budget)
    }
}

pub fn cc_winners_exhaustive(e: &Election, k: usize, budget: &Budget) -> Result<WinnerSet> {
    let m = e.num_candidates();
    if binomial(m, k) > u128::from(budget.max_committees) {
        return Err(Error::resource("beta-CC committees", budget.max_committees));
    }
    let pos = e.positions();
    let all: Vec<usize> = (0..m).collect();
    let mut best = i64::MIN;
    let mut out = BTreeSet::new();
    let _ = for_each_combination(&all, k, |pick| {
        let s = cc_score_pos(&pos, m, pick);
        if s > best {
            best = s;
            out.clear();
        }
        if s == best {
            out.insert(Committee::from_sorted(pick.to_vec()));
        }
        ControlFlow::Continue(())
    });
    Ok(WinnerSet::new(k, out))
}

/// Borda winners of the sub-election formed by `voters`; all candidates
/// when `voters` is empty.
pub(crate) fn group_borda_winners(pos: &[Vec<usize>], m: usize, voters: &[usize]) -> Vec<Candidate> {
    let mut best = i64::MIN;
    let mut out = Vec::new();
    for c in 0..m {
        let s: i64 = voters.iter().map(|&v| (m - 1 - pos[v][c]) as i64).sum();
        if s > best {
            best = s;
            out.clear();
        }
        if s == best {
            out.push(c);
        }
    }
    out
}

/// Groups voters by partition label.
pub(crate) fn blocks(labels: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        out[l].push(v);
    }
    out
}

/// Winner set via voter partitions.
///
/// In an optimal committee every member that represents a group of voters
/// is a Borda winner of that group, so the optimal "representative sets"
/// are found among one-Borda-winner-per-block choices over all partitions
/// into at most `k` blocks. The winners are the k-supersets of the optimal
/// representative sets.
pub fn cc_winners_partition(e: &Election, k: usize, budget: &Budget) -> Result<WinnerSet> {
    let (m, n) = (e.num_candidates(), e.num_voters());
    if partitions_at_most(n, k) > u128::from(budget.partitions) {
        return Err(Error::resource("voter partitions", budget.partitions));
    }
    let pos = e.positions();
    let mut best = i64::MIN;
    let mut reps: BTreeSet<Vec<Candidate>> = BTreeSet::new();
    let mut overflow = false;
    let _ = for_each_partition(n, k, |labels, count| {
        let groups = blocks(labels, count);
        let options: Vec<Vec<Candidate>> = groups
            .iter()
            .map(|g| group_borda_winners(&pos, m, g))
            .collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            let mut set: Vec<Candidate> = choice.iter().zip(&options).map(|(&i, o)| o[i]).collect();
            set.sort_unstable();
            set.dedup();
            if set.len() <= k {
                let s = cc_score_pos(&pos, m, &set);
                if s > best {
                    best = s;
                    reps.clear();
                }
                if s == best {
                    reps.insert(set);
                }
            }
            // odometer over the per-block choices
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
        if reps.len() as u64 > budget.max_committees {
            overflow = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::resource("beta-CC representative sets", budget.max_committees));
    }

    let mut out = BTreeSet::new();
    for r in reps {
        let rest: Vec<usize> = (0..m).filter(|c| r.binary_search(c).is_err()).collect();
        if binomial(rest.len(), k - r.len()) + out.len() as u128 > u128::from(budget.max_committees) {
            return Err(Error::resource("beta-CC committees", budget.max_committees));
        }
        let _ = for_each_combination(&rest, k - r.len(), |fill| {
            let mut members = r.clone();
            members.extend_from_slice(fill);
            members.sort_unstable();
            out.insert(Committee::from_sorted(members));
            ControlFlow::Continue(())
        });
    }
    Ok(WinnerSet::new(k, out))
}
