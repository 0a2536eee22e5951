//! Elections, adjacent swaps, committees and ranking distances.
//!
//! Candidates are dense indices `0..m`; display names live in a shared
//! symbol table so cloning an election (which the swap searches do a lot)
//! only copies the votes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense candidate index.
pub type Candidate = usize;

/// A complete strict ranking, most preferred first.
pub type Ranking = Vec<Candidate>;

/// An ordinal election: `m` candidates and `n` complete strict rankings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Election {
    names: Arc<Vec<String>>,
    votes: Vec<Ranking>,
}

/// One transposition of adjacent candidates in one vote.
///
/// Both fields are zero-based: `position = i` exchanges the candidates at
/// positions `i` and `i + 1` of vote `voter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Swap {
    pub voter: usize,
    pub position: usize,
}

impl Swap {
    pub fn new(voter: usize, position: usize) -> Self {
        Swap { voter, position }
    }
}

/// Validates that `r` is a permutation of `0..m`.
pub(crate) fn check_permutation(r: &[Candidate], m: usize) -> bool {
    if r.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &c in r {
        if c >= m || seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// Default display names `c1, c2, ..., cm`.
pub fn default_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("c{i}")).collect()
}

impl Election {
    /// Builds an election from display names and index rankings.
    pub fn new(names: Vec<String>, votes: Vec<Ranking>) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::domain("an election needs at least one candidate"));
        }
        if votes.is_empty() {
            return Err(Error::domain("an election needs at least one vote"));
        }
        let mut seen = HashMap::with_capacity(m);
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::domain(format!("duplicate candidate name {name:?}")));
            }
        }
        for (i, v) in votes.iter().enumerate() {
            if !check_permutation(v, m) {
                return Err(Error::domain(format!(
                    "vote {i} is not a complete strict ranking of the {m} candidates"
                )));
            }
        }
        Ok(Election {
            names: Arc::new(names),
            votes,
        })
    }

    /// Builds an election over `m` candidates named `c1..cm`.
    pub fn from_votes(m: usize, votes: Vec<Ranking>) -> Result<Self> {
        Election::new(default_names(m), votes)
    }

    /// Same candidates, different votes. The votes are validated.
    pub fn with_votes(&self, votes: Vec<Ranking>) -> Result<Self> {
        let m = self.num_candidates();
        if votes.is_empty() {
            return Err(Error::domain("an election needs at least one vote"));
        }
        if let Some(i) = votes.iter().position(|v| !check_permutation(v, m)) {
            return Err(Error::domain(format!("vote {i} is not a permutation")));
        }
        Ok(Election {
            names: Arc::clone(&self.names),
            votes,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    pub fn num_voters(&self) -> usize {
        self.votes.len()
    }

    pub fn votes(&self) -> &[Ranking] {
        &self.votes
    }

    pub fn vote(&self, voter: usize) -> &[Candidate] {
        &self.votes[voter]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: Candidate) -> &str {
        &self.names[c]
    }

    pub fn candidate(&self, name: &str) -> Option<Candidate> {
        self.names.iter().position(|n| n == name)
    }

    /// `pos[v][c]`: zero-based position of candidate `c` in vote `v`.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        self.votes.iter().map(|v| inverse(v)).collect()
    }

    /// Zero-based position of `c` in vote `voter`.
    pub fn position(&self, voter: usize, c: Candidate) -> usize {
        self.votes[voter]
            .iter()
            .position(|&x| x == c)
            .expect("vote is a permutation")
    }

    fn check_swap(&self, s: Swap) -> Result<()> {
        let m = self.num_candidates();
        if s.voter >= self.num_voters() || s.position + 1 >= m {
            return Err(Error::InvalidSwap {
                voter: s.voter,
                position: s.position,
                voters: self.num_voters(),
                candidates: m,
            });
        }
        Ok(())
    }

    /// Returns a new election with swap `s` applied; `self` is untouched.
    pub fn apply_swap(&self, s: Swap) -> Result<Election> {
        self.check_swap(s)?;
        let mut e = self.clone();
        e.votes[s.voter].swap(s.position, s.position + 1);
        Ok(e)
    }

    /// Applies a whole swap sequence, returning a new election.
    pub fn apply_swaps(&self, swaps: &[Swap]) -> Result<Election> {
        let mut e = self.clone();
        for &s in swaps {
            e.check_swap(s)?;
            e.votes[s.voter].swap(s.position, s.position + 1);
        }
        Ok(e)
    }

    /// In-place swap for search loops that own their election.
    pub(crate) fn swap_in_place(&mut self, s: Swap) {
        self.votes[s.voter].swap(s.position, s.position + 1);
    }

    /// Total number of adjacent-swap slots, `n * (m - 1)`.
    pub fn swap_slots(&self) -> usize {
        self.num_voters() * self.num_candidates().saturating_sub(1)
    }

    /// Maps slot `i < swap_slots()` to its swap.
    pub fn slot_swap(&self, slot: usize) -> Swap {
        let per = self.num_candidates() - 1;
        Swap::new(slot / per, slot % per)
    }

    /// Renders a ranking with candidate names, e.g. `a>b>c`.
    pub fn render(&self, r: &[Candidate]) -> String {
        r.iter()
            .map(|&c| self.names[c].as_str())
            .collect::<Vec<_>>()
            .join(">")
    }

    pub fn to_json(&self) -> ElectionJson {
        ElectionJson {
            candidates: self.names.to_vec(),
            votes: self
                .votes
                .iter()
                .map(|v| v.iter().map(|&c| self.names[c].clone()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &ElectionJson) -> Result<Self> {
        let index: HashMap<&str, usize> = j
            .candidates
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut votes = Vec::with_capacity(j.votes.len());
        for (i, v) in j.votes.iter().enumerate() {
            let r = v
                .iter()
                .map(|n| {
                    index
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| Error::domain(format!("vote {i}: unknown candidate {n:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            votes.push(r);
        }
        Election::new(j.candidates.clone(), votes)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ElectionJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Election::from_json(&j)
    }
}

impl fmt::Debug for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let votes: Vec<String> = self.votes.iter().map(|v| self.render(v)).collect();
        f.debug_struct("Election").field("votes", &votes).finish()
    }
}

/// Canonical JSON form: `{"candidates": [...], "votes": [[...], ...]}` with
/// votes spelled out by candidate name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionJson {
    pub candidates: Vec<String>,
    pub votes: Vec<Vec<String>>,
}

/// Position table of a ranking: `inverse(r)[c]` is the index of `c` in `r`.
pub fn inverse(r: &[Candidate]) -> Vec<usize> {
    let mut pos = vec![0; r.len()];
    for (i, &c) in r.iter().enumerate() {
        pos[c] = i;
    }
    pos
}

/// Number of candidate pairs ordered differently by the two rankings.
///
/// Equals the minimum number of adjacent swaps turning `r1` into `r2`.
pub fn kendall_tau(r1: &[Candidate], r2: &[Candidate]) -> Result<usize> {
    let m = r1.len();
    if !check_permutation(r1, m) || !check_permutation(r2, m) {
        return Err(Error::domain(
            "kendall_tau needs two permutations of the same candidate set",
        ));
    }
    let pos2 = inverse(r2);
    // Relabel r1 through r2's positions and count inversions.
    let seq: Vec<usize> = r1.iter().map(|&c| pos2[c]).collect();
    let mut inv = 0;
    for i in 0..m {
        for j in i + 1..m {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    Ok(inv)
}

/// Minimal adjacent-swap path turning `from` into `to`, as zero-based
/// positions (bubble sort against the target order).
pub fn swap_path(from: &[Candidate], to: &[Candidate]) -> Vec<usize> {
    let target = inverse(to);
    let mut cur = from.to_vec();
    let mut out = Vec::new();
    let m = cur.len();
    loop {
        let mut moved = false;
        for i in 0..m.saturating_sub(1) {
            if target[cur[i]] > target[cur[i + 1]] {
                cur.swap(i, i + 1);
                out.push(i);
                moved = true;
            }
        }
        if !moved {
            return out;
        }
    }
}

/// A committee: a set of candidates kept sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Committee(Vec<Candidate>);

impl Committee {
    /// Builds a committee; duplicates are rejected.
    pub fn new(mut members: Vec<Candidate>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("committee members must be distinct"));
        }
        Ok(Committee(members))
    }

    /// For callers that already hold a sorted, duplicate-free list.
    pub(crate) fn from_sorted(members: Vec<Candidate>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee(members)
    }

    pub fn members(&self) -> &[Candidate] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn intersection_size(&self, other: &Committee) -> usize {
        self.0.iter().filter(|&&c| other.contains(c)).count()
    }

    /// Member mask over `m` candidates.
    pub fn mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for &c in &self.0 {
            mask[c] = true;
        }
        mask
    }

    pub fn names(&self, e: &Election) -> Vec<String> {
        self.0.iter().map(|&c| e.name(c).to_owned()).collect()
    }
}
