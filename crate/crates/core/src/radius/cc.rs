//! Exact beta-CC radius, exponential only in the number of voters.
//!
//! First decide whether the winner is unique, by enumerating voter
//! partitions and the Borda winners of each group.
//!
//! With a unique winner `W`, the outcome changes exactly when some other
//! committee reaches `W`'s score. For every partition of the voters into
//! at most `k` groups (one group per representative of the rival
//! committee), a knapsack over how far each group's representative is
//! shifted up in each vote gives the cheapest rival.
//!
//! With two tied winners `WA`, `WB`, one swap suffices whenever some voter
//! has different representatives under them. Otherwise the winners are
//! exactly the committees containing the set of top-ranked candidates, and
//! the cheapest change either brings a new candidate to the top of some
//! vote or removes one of the current tops from every vote.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::combinatorics::{for_each_combination, for_each_partition, partitions_at_most};
use crate::election::{Candidate, Committee, Election, Swap};
use crate::error::{Error, Result};
use crate::radius::{shift_up, RadiusMethod, RadiusResult};
use crate::rules::cc::{blocks, cc_score_pos, group_borda_winners};

/// Either the unique beta-CC committee or two distinct tied winners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CcOutcome {
    Unique(Committee),
    Tied(Committee, Committee),
}

/// Completes `base` to size `k` with the lexicographically smallest
/// candidates, skipping completions equal to `avoid`.
fn complete(base: &BTreeSet<Candidate>, k: usize, m: usize, avoid: Option<&Committee>) -> Option<Committee> {
    let rest: Vec<usize> = (0..m).filter(|c| !base.contains(c)).collect();
    let mut found = None;
    let _ = for_each_combination(&rest, k - base.len(), |fill| {
        let mut members: Vec<usize> = base.iter().copied().chain(fill.iter().copied()).collect();
        members.sort_unstable();
        let c = Committee::from_sorted(members);
        if avoid == Some(&c) {
            return ControlFlow::Continue(());
        }
        found = Some(c);
        ControlFlow::Break(())
    });
    found
}

/// Two distinct size-`k` committees, the first containing `first`, the
/// second `last`.
fn two_completions(first: &BTreeSet<Candidate>, last: &BTreeSet<Candidate>, k: usize, m: usize) -> (Committee, Committee) {
    let w1 = complete(first, k, m, None).expect("k ≤ m");
    match complete(last, k, m, Some(&w1)) {
        Some(w2) => (w1, w2),
        None => {
            // `last` is already the full committee `w1`
            let w2 = Committee::from_sorted(last.iter().copied().collect());
            let w1 = complete(first, k, m, Some(&w2)).expect("first ⊊ last leaves a choice");
            (w1, w2)
        }
    }
}

/// Unique winner, or two tied winners, via voter partitions into at most
/// `k` groups and the Borda winners of each group.
pub fn cc_unique_or_pair(e: &Election, k: usize, budget: &Budget) -> Result<CcOutcome> {
    let (m, n) = (e.num_candidates(), e.num_voters());
    if k == 0 || k > m {
        return Err(Error::domain(format!("committee size {k} outside 1..={m}")));
    }
    if k == m {
        return Ok(CcOutcome::Unique(Committee::from_sorted((0..m).collect())));
    }
    let tops: BTreeSet<Candidate> = e.votes().iter().map(|v| v[0]).collect();
    if k >= n {
        // every voter can get their favourite
        if tops.len() == k {
            return Ok(CcOutcome::Unique(Committee::from_sorted(tops.into_iter().collect())));
        }
        let (a, b) = two_completions(&tops, &tops, k, m);
        return Ok(CcOutcome::Tied(a, b));
    }
    if partitions_at_most(n, k) > u128::from(budget.partitions) {
        return Err(Error::resource("voter partitions", budget.partitions));
    }
    let pos = e.positions();
    let mut stored: BTreeSet<Committee> = BTreeSet::new();
    let _ = for_each_partition(n, k, |labels, count| {
        let groups = blocks(labels, count);
        let winners: Vec<Vec<Candidate>> = groups.iter().map(|g| group_borda_winners(&pos, m, g)).collect();
        let first: BTreeSet<Candidate> = winners.iter().map(|w| w[0]).collect();
        let singletons = winners.iter().all(|w| w.len() == 1);
        if singletons && first.len() == k {
            stored.insert(Committee::from_sorted(first.into_iter().collect()));
        } else {
            let last: BTreeSet<Candidate> = winners.iter().map(|w| *w.last().expect("nonempty")).collect();
            let (a, b) = two_completions(&first, &last, k, m);
            stored.insert(a);
            stored.insert(b);
        }
        ControlFlow::Continue(())
    });
    let mut best = i64::MIN;
    let mut top: Vec<Committee> = Vec::new();
    for c in stored {
        let s = cc_score_pos(&pos, m, c.members());
        if s > best {
            best = s;
            top.clear();
        }
        if s == best && top.len() < 2 {
            top.push(c);
        }
    }
    let mut it = top.into_iter();
    let a = it.next().expect("some committee stored");
    Ok(match it.next() {
        Some(b) => CcOutcome::Tied(a, b),
        None => CcOutcome::Unique(a),
    })
}

const NEG: i64 = i64::MIN / 4;

/// `g(v, c, b)`: Borda score of `c` minus that of `v`'s best-ranked member
/// of `w`, after shifting `c` up `b` positions in vote `v`; `None` when
/// `c` cannot move that far.
pub fn shift_gain(pos: &[usize], w: &[Candidate], c: Candidate, b: usize) -> Option<i64> {
    let from = pos[c];
    if b > from {
        return None;
    }
    let to = from - b;
    let moved = |x: Candidate| -> usize {
        if x == c {
            to
        } else if pos[x] >= to && pos[x] < from {
            pos[x] + 1
        } else {
            pos[x]
        }
    };
    let rep = w.iter().map(|&x| moved(x)).min().expect("nonempty committee");
    Some(rep as i64 - to as i64)
}

/// Per-group, per-candidate tables `g(V', c, b)` (best gain with at most
/// `b` shifts spread over the group's voters) for one voter partition.
pub struct ShiftTable {
    /// `best[c][b]`, nondecreasing in `b`.
    best: Vec<Vec<i64>>,
    /// `split[c][t][b]`: best gain using the first `t` voters of the group.
    split: Vec<Vec<Vec<i64>>>,
}

impl ShiftTable {
    pub fn build(pos: &[Vec<usize>], group: &[usize], w: &[Candidate], max_b: usize) -> Self {
        let m = pos.first().map_or(0, Vec::len);
        let mut best = Vec::with_capacity(m);
        let mut split = Vec::with_capacity(m);
        for c in 0..m {
            let mut rows = vec![vec![0i64; max_b + 1]];
            for &v in group {
                let prev = rows.last().expect("nonempty");
                let mut next = vec![NEG; max_b + 1];
                for b in 0..=max_b {
                    for bv in 0..=b.min(pos[v][c]) {
                        if prev[b - bv] == NEG {
                            continue;
                        }
                        let g = shift_gain(&pos[v], w, c, bv).expect("bv ≤ position");
                        next[b] = next[b].max(prev[b - bv] + g);
                    }
                }
                rows.push(next);
            }
            best.push(rows.last().expect("nonempty").clone());
            split.push(rows);
        }
        ShiftTable { best, split }
    }

    pub fn value(&self, c: Candidate, b: usize) -> i64 {
        self.best[c][b]
    }

    /// Budget per voter of the group realizing `value(c, b)`.
    fn allocation(&self, pos: &[Vec<usize>], group: &[usize], w: &[Candidate], c: Candidate, b: usize) -> Vec<usize> {
        let rows = &self.split[c];
        let mut out = vec![0; group.len()];
        let mut b = b;
        for t in (0..group.len()).rev() {
            let v = group[t];
            let target = rows[t + 1][b];
            let bv = (0..=b.min(pos[v][c]))
                .find(|&bv| {
                    rows[t][b - bv] != NEG
                        && rows[t][b - bv] + shift_gain(&pos[v], w, c, bv).expect("bv ≤ position") == target
                })
                .expect("table entry has a predecessor");
            out[t] = bv;
            b -= bv;
        }
        out
    }
}

/// Swaps shifting `c` up `b_v` positions in each voter of the group.
fn shifts(pos: &[Vec<usize>], group: &[usize], c: Candidate, alloc: &[usize]) -> Vec<Swap> {
    group
        .iter()
        .zip(alloc)
        .flat_map(|(&v, &b)| shift_up(v, pos[v][c], pos[v][c] - b))
        .collect()
}

pub fn radius_cc_fpt(e: &Election, k: usize, budget: &Budget) -> Result<RadiusResult> {
    let m = e.num_candidates();
    match cc_unique_or_pair(e, k, budget)? {
        _ if k == m => Ok(RadiusResult::unreachable(RadiusMethod::Fpt)),
        CcOutcome::Unique(w) => unique_branch(e, k, &w, budget),
        CcOutcome::Tied(a, b) => Ok(tied_branch(e, &a, &b)),
    }
}

fn unique_branch(e: &Election, k: usize, w: &Committee, budget: &Budget) -> Result<RadiusResult> {
    let (m, n) = (e.num_candidates(), e.num_voters());
    if partitions_at_most(n, k) > u128::from(budget.partitions) {
        return Err(Error::resource("voter partitions", budget.partitions));
    }
    let pos = e.positions();
    let members = w.members();
    let max_b = n * (m - 1);
    let mut best: Option<Vec<Swap>> = None;

    let _ = for_each_partition(n, k, |labels, count| {
        let groups = blocks(labels, count);
        let cap = best.as_ref().map_or(max_b, |b| b.len().saturating_sub(1));
        let tables: Vec<ShiftTable> = groups.iter().map(|g| ShiftTable::build(&pos, g, members, cap)).collect();
        for &out in members {
            let allowed: Vec<Candidate> = (0..m).filter(|&c| c != out).collect();
            if let Some(plan) = cheapest_rival(&tables, &allowed, cap) {
                let mut witness = Vec::new();
                for (i, (c, bi)) in plan.into_iter().enumerate() {
                    let alloc = tables[i].allocation(&pos, &groups[i], members, c, bi);
                    witness.extend(shifts(&pos, &groups[i], c, &alloc));
                }
                if best.as_ref().is_none_or(|b| witness.len() < b.len()) {
                    best = Some(witness);
                }
            }
        }
        ControlFlow::Continue(())
    });
    Ok(match best {
        Some(w) => RadiusResult::found(w, RadiusMethod::Fpt),
        None => RadiusResult::unreachable(RadiusMethod::Fpt),
    })
}

/// `f(C', i, b)`: the best total gain choosing one representative from
/// `allowed` per group with `b` shifts overall. Returns the smallest `b ≤
/// cap` with `f(C', groups, b) ≥ 0` as a per-group (candidate, budget)
/// plan.
fn cheapest_rival(tables: &[ShiftTable], allowed: &[Candidate], cap: usize) -> Option<Vec<(Candidate, usize)>> {
    let groups = tables.len();
    // f[i][b] and the choice that attains it
    let mut f = vec![vec![0i64; cap + 1]];
    let mut pick: Vec<Vec<(Candidate, usize)>> = Vec::with_capacity(groups);
    for t in tables {
        let prev = f.last().expect("nonempty");
        let mut next = vec![NEG; cap + 1];
        let mut arg = vec![(0, 0); cap + 1];
        for b in 0..=cap {
            for &c in allowed {
                for bi in 0..=b {
                    let v = prev[b - bi] + t.value(c, bi);
                    if v > next[b] {
                        next[b] = v;
                        arg[b] = (c, bi);
                    }
                }
            }
        }
        f.push(next);
        pick.push(arg);
    }
    let b = (0..=cap).find(|&b| f[groups][b] >= 0)?;
    let mut plan = vec![(0, 0); groups];
    let mut left = b;
    for i in (0..groups).rev() {
        let (c, bi) = pick[i][left];
        plan[i] = (c, bi);
        left -= bi;
    }
    Some(plan)
}

fn tied_branch(e: &Election, wa: &Committee, wb: &Committee) -> RadiusResult {
    let pos = e.positions();
    let rep = |v: usize, w: &Committee| *w.members().iter().min_by_key(|&&c| pos[v][c]).expect("nonempty");
    for v in 0..e.num_voters() {
        let (a, b) = (rep(v, wa), rep(v, wb));
        if a != b {
            // lift the lower of the two representatives by one position
            let lower = if pos[v][a] < pos[v][b] { b } else { a };
            return RadiusResult::found(vec![Swap::new(v, pos[v][lower] - 1)], RadiusMethod::Fpt);
        }
    }

    let m = e.num_candidates();
    let tops: BTreeSet<Candidate> = e.votes().iter().map(|v| v[0]).collect();
    let mut best: Option<Vec<Swap>> = None;
    let mut consider = |w: Vec<Swap>| {
        if best.as_ref().is_none_or(|b| w.len() < b.len()) {
            best = Some(w);
        }
    };
    // a new candidate reaches some top
    for c in (0..m).filter(|c| !tops.contains(c)) {
        let v = (0..e.num_voters()).min_by_key(|&v| pos[v][c]).expect("voters exist");
        consider(shift_up(v, pos[v][c], 0).collect());
    }
    // some current top disappears: replace it by another top everywhere
    for &c in &tops {
        for &d in tops.iter().filter(|&&d| d != c) {
            let w: Vec<Swap> = (0..e.num_voters())
                .filter(|&v| e.vote(v)[0] == c)
                .flat_map(|v| shift_up(v, pos[v][d], 0))
                .collect();
            consider(w);
        }
    }
    match best {
        Some(w) => RadiusResult::found(w, RadiusMethod::Fpt),
        None => RadiusResult::unreachable(RadiusMethod::Fpt),
    }
}
