//! Reading and writing PrefLib strict-complete-order (`soc`) files.
//!
//! Only the modern header style is understood:
//!
//! ```text
//! # DATA TYPE: soc
//! # NUMBER ALTERNATIVES: 3
//! # NUMBER VOTERS: 5
//! # NUMBER UNIQUE ORDERS: 2
//! # ALTERNATIVE NAME 1: Alice
//! # ALTERNATIVE NAME 2: Bob
//! # ALTERNATIVE NAME 3: Carol
//! 3: 1,2,3
//! 2: 3,1,2
//! ```
//!
//! Alternatives are numbered from 1. A line `w: ...` expands into `w`
//! identical votes. Unrecognized `#` lines are ignored.

use std::fmt::Write as _;

use crate::election::{default_names, Election, Ranking};
use crate::error::{Error, Result};

pub fn read_preflib(text: &str) -> Result<Election> {
    let mut alternatives: Option<usize> = None;
    let mut declared_voters: Option<usize> = None;
    let mut names: Vec<(usize, usize, String)> = Vec::new();
    let mut votes: Vec<Ranking> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            let Some((key, value)) = meta.split_once(':') else {
                continue;
            };
            let key = key.trim();
            let value = value.trim();
            if key == "NUMBER ALTERNATIVES" {
                alternatives = Some(parse_count(value, line_no)?);
            } else if key == "NUMBER VOTERS" {
                declared_voters = Some(parse_count(value, line_no)?);
            } else if let Some(num) = key.strip_prefix("ALTERNATIVE NAME ") {
                let i = parse_count(num, line_no)?;
                names.push((i, line_no, value.to_owned()));
            } else if key == "DATA TYPE" && value != "soc" {
                return Err(Error::parse(
                    line_no,
                    format!("data type {value:?} is not a strict complete order file"),
                ));
            }
            continue;
        }

        let m = alternatives
            .ok_or_else(|| Error::parse(line_no, "order line before NUMBER ALTERNATIVES"))?;
        let (count, order) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, "expected `count: order`"))?;
        let count = parse_count(count.trim(), line_no)?;
        if count == 0 {
            return Err(Error::parse(line_no, "vote count must be positive"));
        }
        if order.contains('{') || order.contains('}') {
            return Err(Error::parse(line_no, "tied alternatives are not allowed"));
        }
        let mut ranking = Vec::with_capacity(m);
        let mut seen = vec![false; m];
        for tok in order.split(',') {
            let a = parse_count(tok.trim(), line_no)?;
            if a == 0 || a > m {
                return Err(Error::parse(line_no, format!("alternative {a} outside 1..={m}")));
            }
            if std::mem::replace(&mut seen[a - 1], true) {
                return Err(Error::parse(line_no, format!("alternative {a} listed twice")));
            }
            ranking.push(a - 1);
        }
        if ranking.len() != m {
            return Err(Error::parse(
                line_no,
                format!("incomplete order: {} of {m} alternatives", ranking.len()),
            ));
        }
        votes.extend(std::iter::repeat_n(ranking, count));
    }

    let m = alternatives.ok_or_else(|| Error::parse(0, "missing NUMBER ALTERNATIVES"))?;
    if let Some(n) = declared_voters {
        if n != votes.len() {
            return Err(Error::parse(
                0,
                format!("NUMBER VOTERS is {n} but the orders sum to {}", votes.len()),
            ));
        }
    }
    if votes.is_empty() {
        return Err(Error::parse(0, "no votes"));
    }
    let mut table = default_names(m);
    for (i, line_no, name) in names {
        if i == 0 || i > m {
            return Err(Error::parse(line_no, format!("name for alternative {i} outside 1..={m}")));
        }
        table[i - 1] = name;
    }
    Election::new(table, votes)
}

/// Writes `e` in the format accepted by [`read_preflib`]. Runs of
/// consecutive identical votes share one weighted line.
pub fn write_preflib(e: &Election) -> String {
    let mut runs: Vec<(usize, &[usize])> = Vec::new();
    for v in e.votes() {
        match runs.last_mut() {
            Some((count, r)) if *r == v.as_slice() => *count += 1,
            _ => runs.push((1, v)),
        }
    }
    let mut out = String::new();
    out.push_str("# DATA TYPE: soc\n");
    let _ = writeln!(out, "# NUMBER ALTERNATIVES: {}", e.num_candidates());
    let _ = writeln!(out, "# NUMBER VOTERS: {}", e.num_voters());
    let _ = writeln!(out, "# NUMBER UNIQUE ORDERS: {}", runs.len());
    for (i, name) in e.names().iter().enumerate() {
        let _ = writeln!(out, "# ALTERNATIVE NAME {}: {}", i + 1, name);
    }
    for (count, r) in runs {
        let order: Vec<String> = r.iter().map(|c| (c + 1).to_string()).collect();
        let _ = writeln!(out, "{count}: {}", order.join(","));
    }
    out
}

fn parse_count(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a nonnegative integer, got {s:?}")))
}
