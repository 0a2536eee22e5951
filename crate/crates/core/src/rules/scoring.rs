//! Positional scoring functions and the "k best candidates" tie sets.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::combinatorics::{binomial, for_each_combination};
use crate::election::{Candidate, Committee, Election};
use crate::error::{Error, Result};
use crate::rules::WinnerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scoring {
    /// `m − i` points for (one-based) position `i`.
    Borda,
    /// One point for each of the top `t` positions.
    Approval(usize),
}

impl Scoring {
    /// Points for zero-based position `pos` among `m` candidates.
    #[inline]
    pub fn points(self, m: usize, pos: usize) -> i64 {
        match self {
            Scoring::Borda => (m - 1 - pos) as i64,
            Scoring::Approval(t) => i64::from(pos < t),
        }
    }
}

pub fn candidate_score(e: &Election, scoring: Scoring, c: Candidate) -> Result<i64> {
    let m = e.num_candidates();
    if c >= m {
        return Err(Error::domain(format!("unknown candidate {c}")));
    }
    Ok((0..e.num_voters())
        .map(|v| scoring.points(m, e.position(v, c)))
        .sum())
}

/// Scores of all candidates.
pub fn scores(e: &Election, scoring: Scoring) -> Vec<i64> {
    let m = e.num_candidates();
    let mut s = vec![0i64; m];
    for v in e.votes() {
        for (pos, &c) in v.iter().enumerate() {
            s[c] += scoring.points(m, pos);
        }
    }
    s
}

/// Split of the candidates around the k-th best score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    /// Candidates strictly above the k-th best score; in every winner.
    pub above: Vec<Candidate>,
    /// Candidates exactly at the k-th best score.
    pub tied: Vec<Candidate>,
    /// Seats left for the tied candidates.
    pub open: usize,
}

impl Threshold {
    pub fn of(scores: &[i64], k: usize) -> Self {
        debug_assert!(k >= 1 && k <= scores.len());
        let mut sorted = scores.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let t = sorted[k - 1];
        let above: Vec<_> = (0..scores.len()).filter(|&c| scores[c] > t).collect();
        let tied: Vec<_> = (0..scores.len()).filter(|&c| scores[c] == t).collect();
        let open = k - above.len();
        Threshold { above, tied, open }
    }

    /// True when exactly one committee wins.
    pub fn is_unique(&self) -> bool {
        self.tied.len() == self.open
    }
}

/// All k-subsets maximizing the summed score: the forced prefix completed
/// by every choice among the candidates at the threshold.
pub fn top_k_ties(scores: &[i64], k: usize, budget: &Budget) -> Result<WinnerSet> {
    let th = Threshold::of(scores, k);
    let count = binomial(th.tied.len(), th.open);
    if count > u128::from(budget.max_committees) {
        return Err(Error::resource("tied committees", budget.max_committees));
    }
    let mut out = BTreeSet::new();
    let _ = for_each_combination(&th.tied, th.open, |pick| {
        let mut members = th.above.clone();
        members.extend_from_slice(pick);
        members.sort_unstable();
        out.insert(Committee::from_sorted(members));
        ControlFlow::Continue(())
    });
    Ok(WinnerSet::new(k, out))
}
