//! Single Transferable Vote for committees.
//!
//! Each round either seats a candidate ranked first by at least
//! `q = floor(n / (k + 1)) + 1` active voters (removing exactly `q` of those
//! voters) or eliminates a candidate with the fewest first places. When the
//! remaining candidates exactly fill the open seats they are all seated.
//!
//! Under parallel-universes tie-breaking every resolution of the internal
//! ties (which quota candidate to seat, which `q` voters to remove, which
//! last-placed candidate to eliminate) is explored. Voters whose remaining
//! rankings coincide are interchangeable, so states are canonicalized as
//! multisets of restricted ballots and memoized.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::budget::Budget;
use crate::election::{Candidate, Committee, Election};
use crate::error::{Error, Result};
use crate::rules::{StvTies, WinnerSet};

pub fn stv_quota(n: usize, k: usize) -> usize {
    n / (k + 1) + 1
}

/// A committee size is normal when seating `k` candidates never needs more
/// voters than exist.
pub fn stv_is_normal(n: usize, k: usize) -> bool {
    k <= n && k * stv_quota(n, k) <= n
}

pub fn stv_winners(e: &Election, k: usize, ties: StvTies, budget: &Budget) -> Result<WinnerSet> {
    match ties {
        StvTies::Lexicographic => {
            let c = stv_lexicographic(e, k);
            Ok(WinnerSet::new(k, BTreeSet::from([c])))
        }
        StvTies::ParallelUniverses => stv_parallel(e, k, budget),
    }
}

/// Deterministic STV: lowest candidate index seated or eliminated first,
/// lowest voter indices removed first.
pub fn stv_lexicographic(e: &Election, k: usize) -> Committee {
    let m = e.num_candidates();
    let q = stv_quota(e.num_voters(), k);
    let mut remaining = vec![true; m];
    let mut left = m;
    let mut active = vec![true; e.num_voters()];
    let mut committee = Vec::with_capacity(k);
    let mut tops = vec![0usize; e.num_voters()];

    while committee.len() < k {
        let open = k - committee.len();
        if left == open {
            committee.extend((0..m).filter(|&c| remaining[c]));
            break;
        }
        let mut count = vec![0usize; m];
        for (v, vote) in e.votes().iter().enumerate() {
            if active[v] {
                let t = *vote.iter().find(|&&c| remaining[c]).expect("candidates remain");
                tops[v] = t;
                count[t] += 1;
            }
        }
        if let Some(c) = (0..m).find(|&c| remaining[c] && count[c] >= q) {
            let mut removed = 0;
            for v in 0..e.num_voters() {
                if removed == q {
                    break;
                }
                if active[v] && tops[v] == c {
                    active[v] = false;
                    removed += 1;
                }
            }
            committee.push(c);
            remaining[c] = false;
        } else {
            let low = (0..m)
                .filter(|&c| remaining[c])
                .min_by_key(|&c| (count[c], c))
                .expect("candidates remain");
            remaining[low] = false;
        }
        left -= 1;
    }
    committee.sort_unstable();
    Committee::from_sorted(committee)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    remaining: Vec<Candidate>,
    seated: Vec<Candidate>,
    /// Multiset of active ballots restricted to `remaining`.
    ballots: BTreeMap<Vec<Candidate>, usize>,
}

impl State {
    fn without(&self, c: Candidate, seat: bool, removed: &BTreeMap<Vec<Candidate>, usize>) -> State {
        let mut ballots = BTreeMap::new();
        for (b, &n) in &self.ballots {
            let n = n - removed.get(b).copied().unwrap_or(0);
            if n == 0 {
                continue;
            }
            let r: Vec<Candidate> = b.iter().copied().filter(|&x| x != c).collect();
            *ballots.entry(r).or_insert(0) += n;
        }
        let mut seated = self.seated.clone();
        if seat {
            seated.push(c);
            seated.sort_unstable();
        }
        State {
            remaining: self.remaining.iter().copied().filter(|&x| x != c).collect(),
            seated,
            ballots,
        }
    }
}

/// All committees elected under some resolution of the internal ties.
pub fn stv_parallel(e: &Election, k: usize, budget: &Budget) -> Result<WinnerSet> {
    let n = e.num_voters();
    if !stv_is_normal(n, k) {
        return Err(Error::UnsupportedCommitteeSize { n, k });
    }
    let q = stv_quota(n, k);
    let mut ballots = BTreeMap::new();
    for v in e.votes() {
        *ballots.entry(v.clone()).or_insert(0) += 1;
    }
    let root = State {
        remaining: (0..e.num_candidates()).collect(),
        seated: Vec::new(),
        ballots,
    };
    let mut seen: HashSet<State> = HashSet::new();
    let mut stack = vec![root];
    let mut out = BTreeSet::new();
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        if seen.len() as u64 > budget.stv_branches {
            return Err(Error::resource("STV tie-breaking states", budget.stv_branches));
        }
        let open = k - s.seated.len();
        if open == 0 {
            out.insert(Committee::from_sorted(s.seated.clone()));
            continue;
        }
        if s.remaining.len() == open {
            let mut all = s.seated.clone();
            all.extend_from_slice(&s.remaining);
            all.sort_unstable();
            out.insert(Committee::from_sorted(all));
            continue;
        }
        let mut count: BTreeMap<Candidate, usize> = s.remaining.iter().map(|&c| (c, 0)).collect();
        for (b, &n) in &s.ballots {
            *count.get_mut(&b[0]).expect("top is remaining") += n;
        }
        let reachers: Vec<Candidate> = count.iter().filter(|(_, &n)| n >= q).map(|(&c, _)| c).collect();
        if reachers.is_empty() {
            let low = *count.values().min().expect("candidates remain");
            for (&c, &n) in &count {
                if n == low {
                    stack.push(s.without(c, false, &BTreeMap::new()));
                }
            }
            continue;
        }
        for c in reachers {
            let groups: Vec<(&Vec<Candidate>, usize)> = s
                .ballots
                .iter()
                .filter(|(b, _)| b[0] == c)
                .map(|(b, &n)| (b, n))
                .collect();
            let mut pick = vec![0usize; groups.len()];
            for_each_removal(&groups, q, 0, &mut pick, &mut |pick| {
                let removed: BTreeMap<Vec<Candidate>, usize> = groups
                    .iter()
                    .zip(pick)
                    .filter(|(_, &x)| x > 0)
                    .map(|((b, _), &x)| ((*b).clone(), x))
                    .collect();
                stack.push(s.without(c, true, &removed));
            });
        }
    }
    Ok(WinnerSet::new(k, out))
}

/// Enumerates ways of taking `left` ballots from the groups, at most
/// `groups[i].1` from group `i`.
fn for_each_removal(
    groups: &[(&Vec<Candidate>, usize)],
    left: usize,
    i: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if i == groups.len() {
        if left == 0 {
            f(pick);
        }
        return;
    }
    let tail: usize = groups[i + 1..].iter().map(|g| g.1).sum();
    let lo = left.saturating_sub(tail);
    let hi = left.min(groups[i].1);
    for x in lo..=hi {
        pick[i] = x;
        for_each_removal(groups, left - x, i + 1, pick, f);
    }
    pick[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quota_examples() {
        assert_eq!(stv_quota(12, 5), 3);
        assert_eq!(stv_quota(1, 1), 1);
        assert_eq!(stv_quota(50, 3), 13);
    }

    #[test]
    fn normality_examples() {
        assert!(!stv_is_normal(12, 5));
        assert!(stv_is_normal(50, 3));
        assert!(!stv_is_normal(2, 3));
        assert!(stv_is_normal(1, 1));
    }

    #[test]
    fn non_normal_parallel_is_unsupported() {
        let e = Election::from_votes(6, vec![(0..6).collect(); 12]).unwrap();
        assert_eq!(
            stv_parallel(&e, 5, &Budget::default()).unwrap_err(),
            Error::UnsupportedCommitteeSize { n: 12, k: 5 }
        );
    }

    #[test]
    fn symmetric_profile_branches() {
        // two voters each: a>b>c and b>a>c, one c>a>b; k=1, q=3
        let votes = vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2], vec![1, 0, 2], vec![2, 0, 1]];
        let e = Election::from_votes(3, votes).unwrap();
        let w = stv_parallel(&e, 1, &Budget::default()).unwrap();
        // c is eliminated, its voter goes to a, a reaches 3
        assert_eq!(w.unique().unwrap().members(), &[0]);

        let e = Election::from_votes(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let w = stv_parallel(&e, 1, &Budget::default()).unwrap();
        assert_eq!(w.len(), 2);
        let lex = stv_lexicographic(&e, 1);
        assert!(w.contains(&lex));
        // lexicographic eliminates candidate 0 first
        assert_eq!(lex.members(), &[1]);
    }

    #[test]
    fn voter_removal_choice_matters() {
        // q = 2 for n=4, k=1... use k=2: q = 2; a has 3 first places.
        // Removing the a>b voter or an a>c voter decides who gets the rest.
        let votes = vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1], vec![1, 2, 0]];
        let e = Election::from_votes(3, votes).unwrap();
        let w = stv_parallel(&e, 2, &Budget::default()).unwrap();
        // b keeps 1 or 2 first places, c gets 0 or 1; both {a,b} reachable,
        // {a,c} needs c to beat b: c can have 1 while b has 1 -> tie -> either
        assert!(w.contains(&Committee::new(vec![0, 1]).unwrap()));
        assert!(w.contains(&Committee::new(vec![0, 2]).unwrap()));
    }
}
