//! Winner computation for 1-robust rules by walking a swap path.
//!
//! Start from the election where everyone votes `c1 > c2 > ... > cm`, whose
//! winner is the top-k prefix, and move one adjacent swap at a time toward
//! the input election. A 1-robust rule always has a new winner within one
//! member exchange of the current one, so keeping a best-scoring committee
//! among the current committee and its exchange neighbours stays a winner.

use crate::election::{swap_path, Committee, Election, Ranking, Swap};
use crate::error::{Error, Result};
use crate::rules::{individual_scores, RuleSpec};

/// A winning committee of `e` under SNTV, Bloc, k-Borda or k-Copeland.
pub fn compute_refinement(spec: &RuleSpec, e: &Election) -> Result<Committee> {
    if !spec.is_score_based() {
        return Err(Error::domain(format!(
            "refinement needs a 1-robust scoring rule, got {}",
            spec.name()
        )));
    }
    let (m, k) = (e.num_candidates(), spec.k);
    if k == 0 || k > m {
        return Err(Error::domain(format!("committee size {k} outside 1..={m}")));
    }
    let identity: Ranking = (0..m).collect();
    let mut cur = Election::new(e.names().to_vec(), vec![identity.clone(); e.num_voters()])?;
    let mut members: Vec<usize> = (0..k).collect();

    for v in 0..e.num_voters() {
        for p in swap_path(&identity, e.vote(v)) {
            cur = cur.apply_swap(Swap::new(v, p))?;
            let scores = individual_scores(&cur, spec).expect("score-based rule");
            members = best_neighbour(&members, &scores);
        }
    }
    Committee::new(members)
}

/// The highest-scoring committee among `s` and every single exchange of a
/// member for a non-member; `s` itself wins ties.
fn best_neighbour(s: &[usize], scores: &[i64]) -> Vec<usize> {
    let total: i64 = s.iter().map(|&c| scores[c]).sum();
    let mut best = (total, None);
    let mut inside = vec![false; scores.len()];
    for &c in s {
        inside[c] = true;
    }
    for (i, &out) in s.iter().enumerate() {
        for (c, &sc) in scores.iter().enumerate() {
            if inside[c] {
                continue;
            }
            let t = total - scores[out] + sc;
            if t > best.0 {
                best = (t, Some((i, c)));
            }
        }
    }
    let mut next = s.to_vec();
    if let Some((i, c)) = best.1 {
        next[i] = c;
    }
    next
}
