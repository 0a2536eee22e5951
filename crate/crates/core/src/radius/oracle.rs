//! Breadth-first search over swap sequences.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::election::{Election, Swap};
use crate::error::{Error, Result};
use crate::radius::stv::stv_ranks;
use crate::radius::{RadiusMethod, RadiusResult};
use crate::rules::{winners_with, Rule, RuleSpec};

struct Node {
    parent: usize,
    swap: Swap,
}

fn key(e: &Election) -> Vec<u8> {
    e.votes().iter().flatten().map(|&c| c as u8).collect()
}

/// Exact radius up to `max_depth` swaps; `None` when no sequence of at
/// most `max_depth` swaps changes the winner set. Voters are
/// distinguishable, so only identical profiles are merged.
///
/// For STV, a swap of two candidates that both have rank above
/// `n² + n + 1` (rank = best position over all votes) is skipped: such
/// candidates cannot reach a winning committee within the radius bound.
pub fn radius_oracle(spec: &RuleSpec, e: &Election, max_depth: usize, budget: &Budget) -> Result<RadiusResult> {
    let m = e.num_candidates();
    if m > usize::from(u8::MAX) + 1 {
        return Err(Error::domain("the search supports at most 256 candidates"));
    }
    let base = winners_with(e, spec, budget)?;
    if spec.k == m || m < 2 {
        return Ok(RadiusResult::unreachable(RadiusMethod::Oracle));
    }
    let n = e.num_voters();
    let prune = matches!(spec.rule, Rule::Stv { .. }).then(|| n * n + n + 1);

    let mut seen: HashSet<Vec<u8>> = HashSet::from([key(e)]);
    let mut nodes = vec![Node {
        parent: usize::MAX,
        swap: Swap::new(0, 0),
    }];
    let mut frontier: Vec<(usize, Election)> = vec![(0, e.clone())];

    for _ in 0..max_depth {
        let mut children: Vec<(usize, Election)> = Vec::new();
        for (idx, cur) in &frontier {
            let ranks = prune.map(|_| stv_ranks(cur));
            for slot in 0..cur.swap_slots() {
                let s = cur.slot_swap(slot);
                if let (Some(limit), Some(r)) = (prune, &ranks) {
                    let v = cur.vote(s.voter);
                    if r[v[s.position]] > limit && r[v[s.position + 1]] > limit {
                        continue;
                    }
                }
                let child = cur.apply_swap(s)?;
                if seen.insert(key(&child)) {
                    nodes.push(Node { parent: *idx, swap: s });
                    children.push((nodes.len() - 1, child));
                }
            }
            if seen.len() as u64 > budget.bfs_states {
                return Err(Error::Resource {
                    what: "search states",
                    limit: budget.bfs_states,
                    detail: format!(", frontier size {}", frontier.len()),
                });
            }
        }
        if children.is_empty() {
            break;
        }
        let changed: Vec<bool> = children
            .par_iter()
            .map(|(_, c)| winners_with(c, spec, budget).map(|w| w != base))
            .collect::<Result<_>>()?;
        if let Some(i) = changed.iter().position(|&c| c) {
            let mut witness = Vec::new();
            let mut at = children[i].0;
            while at != 0 {
                witness.push(nodes[at].swap);
                at = nodes[at].parent;
            }
            witness.reverse();
            return Ok(RadiusResult::found(witness, RadiusMethod::Oracle));
        }
        frontier = children;
    }
    Ok(RadiusResult::unreachable(RadiusMethod::Oracle))
}
