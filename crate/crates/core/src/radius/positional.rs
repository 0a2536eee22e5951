//! Exact radius for SNTV, Bloc and k-Borda.
//!
//! Let the current scores split the candidates into a forced set `A`
//! (above the k-th best score), a tie set `T` (at it) and the rest `O`.
//! The winner set stays the same exactly when `A` stays strictly above
//! `T`, `T` stays level and `T` stays strictly above `O`. So the outcome
//! changes iff one of these pair conditions becomes true:
//!
//! - unique winner `W`: some `p ∉ W` reaches some `a ∈ W`;
//! - ties: two members of `T` separate, some `t ∈ T` reaches some
//!   `a ∈ A`, or some `o ∈ O` reaches some `t ∈ T`.
//!
//! Each condition asks for a gain of `s(p) − s(a)` of at least some
//! `need`. Only the final positions of `p` and `a` in each vote matter for
//! that gain, and the cheapest way to put them there keeps every other
//! candidate in its relative order. A knapsack over voters then gives the
//! exact minimum cost per condition; the radius is the minimum over all
//! conditions.

use crate::election::{swap_path, Candidate, Election, Ranking, Swap};
use crate::error::{Error, Result};
use crate::radius::{RadiusMethod, RadiusResult};
use crate::rules::scoring::{scores, Scoring, Threshold};

pub fn radius_sntv(e: &Election, k: usize) -> Result<RadiusResult> {
    radius_positional(e, k, Scoring::Approval(1))
}

pub fn radius_bloc(e: &Election, k: usize) -> Result<RadiusResult> {
    radius_positional(e, k, Scoring::Approval(k))
}

pub fn radius_kborda(e: &Election, k: usize) -> Result<RadiusResult> {
    radius_positional(e, k, Scoring::Borda)
}

/// Exact radius of the rule electing the `k` best candidates under a
/// positional scoring function.
pub fn radius_positional(e: &Election, k: usize, scoring: Scoring) -> Result<RadiusResult> {
    let m = e.num_candidates();
    if k == 0 || k > m {
        return Err(Error::domain(format!("committee size {k} outside 1..={m}")));
    }
    if k == m {
        return Ok(RadiusResult::unreachable(RadiusMethod::Exact));
    }
    let s = scores(e, scoring);
    let th = Threshold::of(&s, k);
    let mut conditions: Vec<(Candidate, Candidate, i64)> = Vec::new();
    if th.is_unique() {
        let mut inside = vec![false; m];
        for &c in th.above.iter().chain(&th.tied) {
            inside[c] = true;
        }
        for p in (0..m).filter(|&c| !inside[c]) {
            for a in (0..m).filter(|&c| inside[c]) {
                conditions.push((p, a, s[a] - s[p]));
            }
        }
    } else {
        let mut level = vec![false; m];
        for &t in &th.tied {
            level[t] = true;
        }
        let above = &th.above;
        let others: Vec<Candidate> = (0..m)
            .filter(|&c| !level[c] && !above.contains(&c))
            .collect();
        for &t1 in &th.tied {
            for &t2 in &th.tied {
                if t1 != t2 {
                    conditions.push((t1, t2, 1));
                }
            }
            for &a in above {
                conditions.push((t1, a, s[a] - s[t1]));
            }
            for &o in &others {
                conditions.push((o, t1, s[t1] - s[o]));
            }
        }
    }

    let mut best: Option<Vec<Swap>> = None;
    for (p, a, need) in conditions {
        let cap = best.as_ref().map_or(usize::MAX, |b| b.len());
        if let Some(w) = cheapest_gain(e, scoring, p, a, need, cap) {
            best = Some(w);
        }
    }
    Ok(match best {
        Some(w) => RadiusResult::found(w, RadiusMethod::Exact),
        None => RadiusResult::unreachable(RadiusMethod::Exact),
    })
}

/// One way of placing `p` and `a` in a vote.
#[derive(Clone, Copy)]
struct Placement {
    gain: i64,
    cost: usize,
    p_at: usize,
    a_at: usize,
}

/// Swaps needed to move `p` from `x` to `x2` and `a` from `y` to `y2`
/// keeping all other candidates in order.
fn placement_cost(x: usize, y: usize, x2: usize, y2: usize) -> usize {
    let others_above = |mine: usize, theirs: usize| mine - usize::from(theirs < mine);
    let (o, o2) = (others_above(x, y), others_above(x2, y2));
    let (q, q2) = (others_above(y, x), others_above(y2, x2));
    o.abs_diff(o2) + q.abs_diff(q2) + usize::from((x < y) != (x2 < y2))
}

/// Cheapest placements per positive gain value for one vote.
fn menu(vote: &[Candidate], scoring: Scoring, p: Candidate, a: Candidate) -> Vec<Placement> {
    let m = vote.len();
    let x = vote.iter().position(|&c| c == p).expect("p in vote");
    let y = vote.iter().position(|&c| c == a).expect("a in vote");
    let base = scoring.points(m, x) - scoring.points(m, y);
    let mut out: Vec<Placement> = Vec::new();
    for x2 in 0..m {
        for y2 in (0..m).filter(|&y2| y2 != x2) {
            let gain = scoring.points(m, x2) - scoring.points(m, y2) - base;
            if gain <= 0 {
                continue;
            }
            let cost = placement_cost(x, y, x2, y2);
            match out.iter_mut().find(|o| o.gain == gain) {
                Some(o) if o.cost <= cost => {}
                Some(o) => *o = Placement { gain, cost, p_at: x2, a_at: y2 },
                None => out.push(Placement { gain, cost, p_at: x2, a_at: y2 }),
            }
        }
    }
    // drop placements beaten by a cheaper or equal one with more gain
    let all = out.clone();
    out.retain(|o| !all.iter().any(|b| b.gain > o.gain && b.cost <= o.cost));
    out.sort_by_key(|o| o.gain);
    out
}

fn rebuild(vote: &[Candidate], p: Candidate, a: Candidate, place: &Placement) -> Ranking {
    let mut target: Ranking = vote.iter().copied().filter(|&c| c != p && c != a).collect();
    let mut items = [(place.p_at, p), (place.a_at, a)];
    items.sort_unstable();
    for (at, c) in items {
        target.insert(at, c);
    }
    target
}

/// Fewest swaps raising `s(p) − s(a)` by at least `need`, with a witness;
/// `None` when impossible or not cheaper than `cap`.
fn cheapest_gain(e: &Election, scoring: Scoring, p: Candidate, a: Candidate, need: i64, cap: usize) -> Option<Vec<Swap>> {
    if need <= 0 {
        return Some(Vec::new());
    }
    let need = need as usize;
    let menus: Vec<Vec<Placement>> = e.votes().iter().map(|v| menu(v, scoring, p, a)).collect();
    const INF: usize = usize::MAX;
    // tables[v][g]: fewest swaps reaching gain g (capped at need) using the
    // first v voters
    let mut tables = vec![vec![INF; need + 1]];
    tables[0][0] = 0;
    for opts in &menus {
        let prev = tables.last().expect("nonempty");
        let mut next = prev.clone();
        for g in 0..=need {
            if prev[g] == INF {
                continue;
            }
            for o in opts {
                let g2 = (g + o.gain as usize).min(need);
                next[g2] = next[g2].min(prev[g] + o.cost);
            }
        }
        tables.push(next);
    }
    let total = tables[menus.len()][need];
    if total == INF || total >= cap {
        return None;
    }
    let mut witness = Vec::new();
    let mut g = need;
    let mut per_voter: Vec<Option<Placement>> = vec![None; menus.len()];
    for v in (0..menus.len()).rev() {
        let here = tables[v + 1][g];
        if tables[v][g] == here {
            continue;
        }
        let (prev_g, o) = (0..=g)
            .flat_map(|pg| menus[v].iter().map(move |o| (pg, *o)))
            .find(|(pg, o)| {
                tables[v][*pg] != INF
                    && (pg + o.gain as usize).min(need) == g
                    && tables[v][*pg] + o.cost == here
            })
            .expect("table entry has a predecessor");
        per_voter[v] = Some(o);
        g = prev_g;
    }
    for (v, place) in per_voter.iter().enumerate() {
        if let Some(place) = place {
            let vote = e.vote(v);
            let target = rebuild(vote, p, a, place);
            witness.extend(swap_path(vote, &target).into_iter().map(|pos| Swap::new(v, pos)));
        }
    }
    debug_assert_eq!(witness.len(), total);
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::kendall_tau;

    #[test]
    fn placement_cost_matches_kendall() {
        let vote: Ranking = vec![0, 1, 2, 3, 4];
        let (p, a) = (3, 1);
        for x2 in 0..5 {
            for y2 in (0..5).filter(|&y| y != x2) {
                let place = Placement { gain: 0, cost: 0, p_at: x2, a_at: y2 };
                let target = rebuild(&vote, p, a, &place);
                assert_eq!(placement_cost(3, 1, x2, y2), kendall_tau(&vote, &target).unwrap());
            }
        }
    }

    #[test]
    fn unanimous_sntv() {
        let e = Election::from_votes(3, vec![vec![0, 1, 2]; 3]).unwrap();
        assert_eq!(radius_sntv(&e, 1).unwrap().radius, Some(2));
        let e = Election::from_votes(2, vec![vec![0, 1]; 3]).unwrap();
        assert_eq!(radius_sntv(&e, 1).unwrap().radius, Some(2));
    }

    #[test]
    fn bloc_boundary_crossing() {
        // c is third for the last voter; one swap approves it and ties a
        let e = Election::from_votes(3, vec![vec![0, 1, 2], vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        // approvals (k=2): a 2, b 3, c 1
        assert_eq!(radius_bloc(&e, 2).unwrap().radius, Some(1));
    }

    #[test]
    fn borda_two_for_one() {
        // one voter a > b: swapping them flips k=1 Borda
        let e = Election::from_votes(2, vec![vec![0, 1]]).unwrap();
        let r = radius_kborda(&e, 1).unwrap();
        assert_eq!(r.radius, Some(1));
        assert_eq!(r.witness, vec![Swap::new(0, 0)]);
    }

    #[test]
    fn full_committee_unreachable() {
        let e = Election::from_votes(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(radius_kborda(&e, 2).unwrap().radius, None);
    }
}
