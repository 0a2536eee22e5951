//! Elections on which a single swap moves many committee members.

use crate::budget::Budget;
use crate::election::{Election, Ranking, Swap};
use crate::error::{Error, Result};
use crate::majority::{mcgarvey, MajorityGraph, Pin};
use crate::rules::scoring::{scores, Scoring};

/// Two disjoint `k`-cycles `A`, `B` plus a candidate `c`, every other pair
/// tied, and a vote with `c` directly below `a1`. Both `A` and `B` are
/// weakly stable; pushing `c` above `a1` (the returned swap) leaves only
/// `B`.
///
/// Candidates: `a1..ak` are `0..k`, `b1..bk` are `k..2k`, `c` is `2k`.
pub fn construct_gws_chaos(k: usize) -> Result<(Election, Swap)> {
    if k < 3 {
        return Err(Error::domain(format!("a {k}-cycle is not antisymmetric; need k ≥ 3")));
    }
    let m = 2 * k + 1;
    let c = 2 * k;
    let mut arcs = Vec::with_capacity(2 * k);
    for base in [0, k] {
        for i in 0..k {
            arcs.push((base + i, base + (i + 1) % k));
        }
    }
    let g = MajorityGraph::from_arcs(m, arcs)?;
    let mut names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    names.extend((1..=k).map(|i| format!("b{i}")));
    names.push("c".into());
    let e = mcgarvey(&g, &[Pin { upper: 0, lower: c }], names)?;
    debug_assert_eq!(&e.vote(0)[..2], &[0, c]);
    Ok((e, Swap::new(0, 0)))
}

/// `2k − 1` voters over `{x, y} ∪ A ∪ B` with `|A| = |B| = k − 1`:
///
/// ```text
/// v1:      x  y  A      B
/// v(2i):   ai x  A\ai   B     y
/// v(2i+1): bi y  A      B\bi  x
/// ```
///
/// The unique beta-CC committee is `{x} ∪ B`; swapping `x` and `y` in `v1`
/// makes it `{y} ∪ A`. Candidates: `x = 0`, `y = 1`, `A` then `B`.
pub fn construct_cc_chaos(k: usize) -> Result<(Election, Swap)> {
    if k == 0 {
        return Err(Error::domain("committee size must be positive"));
    }
    let (x, y) = (0, 1);
    let a: Vec<usize> = (2..k + 1).collect();
    let b: Vec<usize> = (k + 1..2 * k).collect();
    let mut names = vec!["x".to_string(), "y".to_string()];
    names.extend((1..k).map(|i| format!("a{i}")));
    names.extend((1..k).map(|i| format!("b{i}")));

    let mut votes: Vec<Ranking> = Vec::with_capacity(2 * k - 1);
    votes.push([&[x, y][..], &a, &b].concat());
    for i in 0..k - 1 {
        let a_rest: Vec<usize> = a.iter().copied().filter(|&c| c != a[i]).collect();
        let b_rest: Vec<usize> = b.iter().copied().filter(|&c| c != b[i]).collect();
        votes.push([&[a[i], x][..], &a_rest, &b, &[y]].concat());
        votes.push([&[b[i], y][..], &a, &b_rest, &[x]].concat());
    }
    Ok((Election::new(names, votes)?, Swap::new(0, 0)))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn permutations(items: &[usize]) -> Vec<Ranking> {
    fn go(rest: &mut Vec<usize>, prefix: &mut Ranking, out: &mut Vec<Ranking>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let c = rest.remove(i);
            prefix.push(c);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(i, c);
        }
    }
    let mut out = Vec::new();
    go(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// STV profile over `A ∪ B`, `|A| = |B| = k`, where `A` is the unique
/// committee but one swap makes `B` a possible committee.
///
/// Votes: every ranking not starting with `a1` or `b1`; for each `b ∈ B`,
/// `(2k−1)!/k` votes `a1 b (B\b) (A\a1)`; for each `a ∈ A`, `(2k−1)!/k`
/// votes `b1 a (A\a) (B\b1)`. In the first vote of the `b1 a1 ...` group
/// (the pivotal vote) `a1` and `b1` are swapped. The returned swap
/// restores that vote.
///
/// Candidates: `a1..ak` are `0..k`, `b1..bk` are `k..2k`.
pub fn construct_stv_chaos(k: usize, budget: &Budget) -> Result<(Election, Swap)> {
    if k < 2 {
        return Err(Error::domain("the STV construction needs k ≥ 2"));
    }
    let m = 2 * k;
    if m > 12 {
        return Err(Error::resource("construction votes", budget.profile_votes));
    }
    let per = factorial(m - 1) / k;
    let total = factorial(m) - 2 * factorial(m - 1) + 2 * k * per;
    if total as u64 > budget.profile_votes {
        return Err(Error::Resource {
            what: "construction votes",
            limit: budget.profile_votes,
            detail: format!(", k={k} needs {total} votes"),
        });
    }
    let a: Vec<usize> = (0..k).collect();
    let b: Vec<usize> = (k..m).collect();
    let (a1, b1) = (a[0], b[0]);

    let mut votes: Vec<Ranking> = permutations(&(0..m).collect::<Vec<_>>())
        .into_iter()
        .filter(|r| r[0] != a1 && r[0] != b1)
        .collect();
    for &bb in &b {
        let b_rest = b.iter().copied().filter(|&c| c != bb);
        let vote: Ranking = [a1, bb].into_iter().chain(b_rest).chain(a[1..].iter().copied()).collect();
        votes.extend(std::iter::repeat_n(vote, per));
    }
    let pivot = votes.len();
    for &aa in &a {
        let a_rest = a.iter().copied().filter(|&c| c != aa);
        let vote: Ranking = [b1, aa].into_iter().chain(a_rest).chain(b[1..].iter().copied()).collect();
        votes.extend(std::iter::repeat_n(vote, per));
    }
    votes[pivot].swap(0, 1);

    let mut names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    names.extend((1..=k).map(|i| format!("b{i}")));
    Ok((Election::new(names, votes)?, Swap::new(pivot, 0)))
}

/// Borda/CC hybrid election over `A ∪ B ∪ {x, y} ∪ D` with `|A| = |B| = ell`
/// and `|D| = k − ell − 1`:
///
/// ```text
/// v1:      x  y  A  B  D
/// v(2i):   ai x  y  A\ai  B     D
/// v(2i+1): bi y  x  A     B\bi  D
/// wj:      dj D\dj  x  y  B  A      (c copies)
/// w'j:     dj D\dj  y  x  A  B      (c copies)
/// ```
///
/// The copy count `c` starts at `ell²` and grows until every `d ∈ D` has a
/// strictly larger Borda score than `x` and `y` on both sides of the swap,
/// so the Borda stage seats `D` and then the better of `x`, `y`. Swapping
/// `x` and `y` in `v1` turns `D ∪ {x} ∪ B` into `D ∪ {y} ∪ A`.
///
/// Candidates: `x = 0`, `y = 1`, then `A`, `B`, `D`.
pub fn construct_hybrid_level(k: usize, ell: usize) -> Result<(Election, Swap)> {
    if ell == 0 || ell >= k {
        return Err(Error::domain(format!("need 1 ≤ ell < k, got ell={ell}, k={k}")));
    }
    let (x, y) = (0, 1);
    let a: Vec<usize> = (2..2 + ell).collect();
    let b: Vec<usize> = (2 + ell..2 + 2 * ell).collect();
    let d: Vec<usize> = (2 + 2 * ell..k + ell + 1).collect();
    let mut names = vec!["x".to_string(), "y".to_string()];
    names.extend((1..=ell).map(|i| format!("a{i}")));
    names.extend((1..=ell).map(|i| format!("b{i}")));
    names.extend((1..=d.len()).map(|i| format!("d{i}")));

    let mut core: Vec<Ranking> = vec![[&[x, y][..], &a, &b, &d].concat()];
    for i in 0..ell {
        let a_rest: Vec<usize> = a.iter().copied().filter(|&c| c != a[i]).collect();
        let b_rest: Vec<usize> = b.iter().copied().filter(|&c| c != b[i]).collect();
        core.push([&[a[i], x, y][..], &a_rest, &b, &d].concat());
        core.push([&[b[i], y, x][..], &a, &b_rest, &d].concat());
    }

    let build = |copies: usize| -> Result<Election> {
        let mut votes = core.clone();
        for (j, &dj) in d.iter().enumerate() {
            let d_rest: Vec<usize> = d.iter().copied().filter(|&c| c != d[j]).collect();
            let w = [&[dj][..], &d_rest, &[x, y], &b, &a].concat();
            let w2 = [&[dj][..], &d_rest, &[y, x], &a, &b].concat();
            for _ in 0..copies {
                votes.push(w.clone());
                votes.push(w2.clone());
            }
        }
        Election::new(names.clone(), votes)
    };
    let d_leads = |e: &Election| {
        let s = scores(e, Scoring::Borda);
        d.iter().all(|&c| s[c] > s[x].max(s[y]))
    };

    let swap = Swap::new(0, 0);
    let mut copies = ell * ell;
    loop {
        let e = build(copies)?;
        if d.is_empty() || (d_leads(&e) && d_leads(&e.apply_swap(swap)?)) {
            return Ok((e, swap));
        }
        copies += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::Committee;
    use crate::rules::condorcet::{stable_committees, Stability};
    use crate::rules::{winners, RuleSpec, StvTies};

    #[test]
    fn gws_weakly_stable_sets() {
        let (e, s) = construct_gws_chaos(3).unwrap();
        let a = Committee::new(vec![0, 1, 2]).unwrap();
        let b = Committee::new(vec![3, 4, 5]).unwrap();
        let before = stable_committees(&e, 3, Stability::Weak);
        assert_eq!(before.into_iter().collect::<Vec<_>>(), vec![a, b.clone()]);
        let after = stable_committees(&e.apply_swap(s).unwrap(), 3, Stability::Weak);
        assert_eq!(after.into_iter().collect::<Vec<_>>(), vec![b]);
        assert!(construct_gws_chaos(2).is_err());
    }

    #[test]
    fn cc_chaos_k1_flips_x_to_y() {
        let (e, s) = construct_cc_chaos(1).unwrap();
        assert_eq!(e.num_voters(), 1);
        let spec = RuleSpec::beta_cc(1);
        assert_eq!(winners(&e, &spec).unwrap().unique().unwrap().members(), &[0]);
        let after = winners(&e.apply_swap(s).unwrap(), &spec).unwrap();
        assert_eq!(after.unique().unwrap().members(), &[1]);
    }

    #[test]
    fn stv_chaos_k2() {
        let (e, s) = construct_stv_chaos(2, &Budget::default()).unwrap();
        assert_eq!(e.num_voters(), 24);
        let spec = RuleSpec::stv(2, StvTies::ParallelUniverses);
        let a = Committee::new(vec![0, 1]).unwrap();
        let b = Committee::new(vec![2, 3]).unwrap();
        assert_eq!(winners(&e, &spec).unwrap().unique(), Some(&a));
        assert!(winners(&e.apply_swap(s).unwrap(), &spec).unwrap().contains(&b));
    }

    #[test]
    fn stv_chaos_respects_budget() {
        let tight = Budget {
            profile_votes: 100,
            ..Budget::default()
        };
        assert!(matches!(construct_stv_chaos(3, &tight), Err(Error::Resource { .. })));
        assert!(construct_stv_chaos(1, &tight).is_err());
    }

    #[test]
    fn hybrid_k3_ell1_flip() {
        let (e, s) = construct_hybrid_level(3, 1).unwrap();
        let spec = RuleSpec::hybrid(3, 1);
        // x=0, y=1, a1=2, b1=3, d1=4
        let before = winners(&e, &spec).unwrap();
        assert_eq!(before.unique().unwrap().members(), &[0, 3, 4]);
        let after = winners(&e.apply_swap(s).unwrap(), &spec).unwrap();
        assert_eq!(after.unique().unwrap().members(), &[1, 2, 4]);
    }

    #[test]
    fn hybrid_rejects_bad_ell() {
        assert!(construct_hybrid_level(3, 0).is_err());
        assert!(construct_hybrid_level(3, 3).is_err());
    }
}
