//! Pairwise majority relations and McGarvey-style profile synthesis.

use std::collections::BTreeSet;

use crate::election::{Candidate, Election, Ranking};
use crate::error::{Error, Result};

/// Strict (and optionally weak) majority relation over `m` candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityGraph {
    m: usize,
    arcs: BTreeSet<(Candidate, Candidate)>,
    weak_arcs: Option<BTreeSet<(Candidate, Candidate)>>,
}

impl MajorityGraph {
    /// A graph given only by its strict arcs. Rejects loops, out-of-range
    /// endpoints and pairs present in both directions.
    pub fn from_arcs(m: usize, arcs: impl IntoIterator<Item = (Candidate, Candidate)>) -> Result<Self> {
        let arcs: BTreeSet<_> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= m || v >= m {
                return Err(Error::domain(format!("arc ({u},{v}) outside 0..{m}")));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop on {u}")));
            }
            if arcs.contains(&(v, u)) {
                return Err(Error::domain(format!("arcs ({u},{v}) and ({v},{u}) both present")));
            }
        }
        Ok(MajorityGraph {
            m,
            arcs,
            weak_arcs: None,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn arcs(&self) -> &BTreeSet<(Candidate, Candidate)> {
        &self.arcs
    }

    pub fn weak_arcs(&self) -> Option<&BTreeSet<(Candidate, Candidate)>> {
        self.weak_arcs.as_ref()
    }

    pub fn has_arc(&self, u: Candidate, v: Candidate) -> bool {
        self.arcs.contains(&(u, v))
    }
}

/// `margin[u][v]` = (#voters preferring u to v) − (#voters preferring v to u).
pub fn margins(e: &Election) -> Vec<Vec<i64>> {
    let m = e.num_candidates();
    let mut margin = vec![vec![0i64; m]; m];
    for v in e.votes() {
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                margin[a][b] += 1;
                margin[b][a] -= 1;
            }
        }
    }
    margin
}

/// Strict arcs where more than half the voters agree, weak arcs where at
/// least half do.
pub fn majority_graph(e: &Election) -> MajorityGraph {
    let m = e.num_candidates();
    let margin = margins(e);
    let mut arcs = BTreeSet::new();
    let mut weak = BTreeSet::new();
    for u in 0..m {
        for v in 0..m {
            if u == v {
                continue;
            }
            if margin[u][v] > 0 {
                arcs.insert((u, v));
            }
            if margin[u][v] >= 0 {
                weak.insert((u, v));
            }
        }
    }
    MajorityGraph {
        m,
        arcs,
        weak_arcs: Some(weak),
    }
}

/// Requirement that `lower` sits directly below `upper` in some vote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pin {
    pub upper: Candidate,
    pub lower: Candidate,
}

/// Realizes a majority graph: every arc gets margin 2, every other pair
/// is exactly tied.
///
/// Vote layout: pin `i` occupies vote `4 * i` (`upper` first, `lower`
/// second) followed by three votes cancelling its margins; the arc gadgets
/// come after all pins. Callers locate pinned votes through that layout.
pub fn mcgarvey(g: &MajorityGraph, pins: &[Pin], names: Vec<String>) -> Result<Election> {
    let m = g.num_candidates();
    if names.len() != m {
        return Err(Error::Construction(format!(
            "{} names for {m} candidates",
            names.len()
        )));
    }
    for p in pins {
        if p.upper >= m || p.lower >= m {
            return Err(Error::Construction(format!(
                "pin ({},{}) outside 0..{m}",
                p.upper, p.lower
            )));
        }
        if p.upper == p.lower {
            return Err(Error::Construction(format!(
                "pin places candidate {} directly below itself",
                p.upper
            )));
        }
    }

    let mut votes: Vec<Ranking> = Vec::with_capacity(4 * pins.len() + 2 * g.arcs().len() + 2);
    for p in pins {
        let pinned = pair_gadget(m, p.upper, p.lower);
        let cancel = pair_gadget(m, p.lower, p.upper);
        votes.extend(pinned);
        votes.extend(cancel);
    }
    for &(u, v) in g.arcs() {
        votes.extend(pair_gadget(m, u, v));
    }
    if votes.is_empty() {
        let asc: Ranking = (0..m).collect();
        let desc: Ranking = (0..m).rev().collect();
        votes.push(asc);
        votes.push(desc);
    }
    Election::new(names, votes)
}

/// `u ≻ v ≻ rest↑` and `rest↓ ≻ u ≻ v`: margin +2 on (u, v), zero elsewhere.
fn pair_gadget(m: usize, u: Candidate, v: Candidate) -> [Ranking; 2] {
    let rest: Vec<Candidate> = (0..m).filter(|&c| c != u && c != v).collect();
    let mut first = vec![u, v];
    first.extend(rest.iter().copied());
    let mut second: Ranking = rest.iter().rev().copied().collect();
    second.push(u);
    second.push(v);
    [first, second]
}
