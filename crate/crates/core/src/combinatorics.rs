//! Small enumeration helpers: binomials, combinations, set partitions.

use std::ops::ControlFlow;

/// `C(n, r)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` on every `r`-subset of `items` in lexicographic index order.
pub fn for_each_combination<F>(items: &[usize], r: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = items.len();
    if r > n {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf)?;
        // rightmost index that can still advance
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return ControlFlow::Continue(());
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..r {
            buf[j] = items[idx[j]];
        }
    }
}

/// Collects all `r`-subsets of `items`.
pub fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_combination(items, r, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Number of partitions of an `n`-set into at most `k` nonempty blocks.
pub fn partitions_at_most(n: usize, k: usize) -> u128 {
    // Stirling numbers of the second kind, row by row.
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; k + 1];
        for (j, slot) in next.iter_mut().enumerate().skip(1) {
            *slot = row[j]
                .saturating_mul(j as u128)
                .saturating_add(row[j - 1]);
        }
        row = next;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Calls `f` with the block label of every element for each partition of
/// `0..n` into at most `k` blocks (restricted growth strings).
pub fn for_each_partition<F>(n: usize, k: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize], usize) -> ControlFlow<()>,
{
    if n == 0 {
        return f(&[], 0);
    }
    if k == 0 {
        return ControlFlow::Continue(());
    }
    let mut labels = vec![0usize; n];
    // max label used in labels[..=i]
    let mut prefix_max = vec![0usize; n];
    loop {
        f(&labels, prefix_max[n - 1] + 1)?;
        let mut i = n - 1;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            let bound = (prefix_max[i - 1] + 1).min(k - 1);
            if labels[i] < bound {
                labels[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(labels[i]);
                for j in i + 1..n {
                    labels[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
            i -= 1;
        }
    }
}
