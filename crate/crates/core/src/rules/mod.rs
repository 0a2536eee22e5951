//! Multiwinner rules and their full winner sets.
//!
//! Every rule returns the complete set of tied winning committees.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::budget::Budget;
use crate::election::{Committee, Election};
use crate::error::{Error, Result};

pub mod cc;
pub mod condorcet;
pub mod hybrid;
pub mod scoring;
pub mod stv;

pub use cc::{cc_score, dissatisfaction};
pub use condorcet::{gehrlein_stable, Stability};
pub use hybrid::hybrid_winners;
pub use scoring::{candidate_score, Scoring};
pub use stv::{stv_is_normal, stv_quota};

/// Tie-breaking model for the internal ties of STV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StvTies {
    /// A committee wins if some resolution of the internal ties elects it.
    ParallelUniverses,
    /// Lowest candidate index is eliminated first; lowest voter indices are
    /// removed first.
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Sntv,
    Bloc,
    KBorda,
    /// Copeland with `alpha` points per exact pairwise tie.
    KCopeland { alpha: Ratio<i64> },
    Ned,
    BetaCc,
    Stv { ties: StvTies },
    /// `(k − ell)`-Borda followed by `ell` Chamberlin-Courant seats.
    HybridBordaCc { ell: usize },
}

/// A rule together with its committee size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSpec {
    pub rule: Rule,
    pub k: usize,
}

impl RuleSpec {
    pub fn new(rule: Rule, k: usize) -> Self {
        RuleSpec { rule, k }
    }

    pub fn sntv(k: usize) -> Self {
        RuleSpec::new(Rule::Sntv, k)
    }

    pub fn bloc(k: usize) -> Self {
        RuleSpec::new(Rule::Bloc, k)
    }

    pub fn kborda(k: usize) -> Self {
        RuleSpec::new(Rule::KBorda, k)
    }

    pub fn copeland(k: usize, alpha: Ratio<i64>) -> Self {
        RuleSpec::new(Rule::KCopeland { alpha }, k)
    }

    pub fn ned(k: usize) -> Self {
        RuleSpec::new(Rule::Ned, k)
    }

    pub fn beta_cc(k: usize) -> Self {
        RuleSpec::new(Rule::BetaCc, k)
    }

    pub fn stv(k: usize, ties: StvTies) -> Self {
        RuleSpec::new(Rule::Stv { ties }, k)
    }

    pub fn hybrid(k: usize, ell: usize) -> Self {
        RuleSpec::new(Rule::HybridBordaCc { ell }, k)
    }

    /// Short rule name without parameters.
    pub fn name(&self) -> &'static str {
        match self.rule {
            Rule::Sntv => "sntv",
            Rule::Bloc => "bloc",
            Rule::KBorda => "kborda",
            Rule::KCopeland { .. } => "copeland",
            Rule::Ned => "ned",
            Rule::BetaCc => "cc",
            Rule::Stv { .. } => "stv",
            Rule::HybridBordaCc { .. } => "hybrid",
        }
    }

    /// True for the rules selecting the k best individually scored
    /// candidates (the 1-robust family).
    pub fn is_score_based(&self) -> bool {
        matches!(
            self.rule,
            Rule::Sntv | Rule::Bloc | Rule::KBorda | Rule::KCopeland { .. }
        )
    }

    /// Parses `name[:key=value,...]`, taking `k` from `default_k` when the
    /// string omits it.
    pub fn parse_with_default_k(s: &str, default_k: Option<usize>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidSpec(format!("{s:?}: {msg}"));
        let (name, params) = match s.trim().split_once(':') {
            Some((n, p)) => (n.trim(), p.trim()),
            None => (s.trim(), ""),
        };
        let mut k = default_k;
        let mut alpha: Option<Ratio<i64>> = None;
        let mut ell: Option<usize> = None;
        let mut ties: Option<StvTies> = None;
        for kv in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {kv:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "k" => k = Some(value.parse().map_err(|_| bad(format!("bad k {value:?}")))?),
                "alpha" => alpha = Some(parse_ratio(value).ok_or_else(|| bad(format!("bad alpha {value:?}")))?),
                "ell" => ell = Some(value.parse().map_err(|_| bad(format!("bad ell {value:?}")))?),
                "ties" => {
                    ties = Some(match value {
                        "pu" | "parallel" | "parallel-universes" => StvTies::ParallelUniverses,
                        "lex" | "lexicographic" => StvTies::Lexicographic,
                        _ => return Err(bad(format!("unknown tie policy {value:?}"))),
                    })
                }
                _ => return Err(bad(format!("unknown parameter {key:?}"))),
            }
        }
        let k = k.ok_or_else(|| bad("missing k".into()))?;
        if k == 0 {
            return Err(bad("k must be positive".into()));
        }
        let rule = match name.to_ascii_lowercase().as_str() {
            "sntv" => Rule::Sntv,
            "bloc" => Rule::Bloc,
            "kborda" | "borda" | "k-borda" => Rule::KBorda,
            "copeland" | "kcopeland" | "k-copeland" => {
                let alpha = alpha.unwrap_or_else(|| Ratio::new(1, 2));
                if alpha < Ratio::from_integer(0) || alpha > Ratio::from_integer(1) {
                    return Err(bad("alpha must lie in [0,1]".into()));
                }
                Rule::KCopeland { alpha }
            }
            "ned" => Rule::Ned,
            "cc" | "betacc" | "beta-cc" | "chamberlin-courant" => Rule::BetaCc,
            "stv" => Rule::Stv {
                ties: ties.unwrap_or(StvTies::ParallelUniverses),
            },
            "hybrid" => {
                let ell = ell.ok_or_else(|| bad("hybrid needs ell".into()))?;
                if ell > k {
                    return Err(bad("ell must not exceed k".into()));
                }
                Rule::HybridBordaCc { ell }
            }
            other => return Err(bad(format!("unknown rule {other:?}"))),
        };
        let accepts = |flag: bool, given: bool, what: &str| {
            if given && !flag {
                Err(bad(format!("{what} does not apply to {name}")))
            } else {
                Ok(())
            }
        };
        accepts(matches!(rule, Rule::KCopeland { .. }), alpha.is_some(), "alpha")?;
        accepts(matches!(rule, Rule::HybridBordaCc { .. }), ell.is_some(), "ell")?;
        accepts(matches!(rule, Rule::Stv { .. }), ties.is_some(), "ties")?;
        Ok(RuleSpec { rule, k })
    }
}

/// Accepts `p/q`, integers and finite decimals such as `0.25`.
fn parse_ratio(s: &str) -> Option<Ratio<i64>> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (i64, i64) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
        return (q != 0).then(|| Ratio::new(p, q));
    }
    match s.split_once('.') {
        None => s.parse().ok().map(Ratio::from_integer),
        Some((int, frac)) => {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let den = 10i64.pow(frac.len() as u32);
            let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
            let frac: i64 = frac.parse().ok()?;
            Some(Ratio::new(int * den + frac, den))
        }
    }
}

impl FromStr for RuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleSpec::parse_with_default_k(s, None)
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:k={}", self.name(), self.k)?;
        match self.rule {
            Rule::KCopeland { alpha } => write!(f, ",alpha={alpha}"),
            Rule::HybridBordaCc { ell } => write!(f, ",ell={ell}"),
            Rule::Stv { ties } => match ties {
                StvTies::ParallelUniverses => write!(f, ",ties=pu"),
                StvTies::Lexicographic => write!(f, ",ties=lex"),
            },
            _ => Ok(()),
        }
    }
}

/// The full set of tied winning committees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WinnerSet {
    k: usize,
    committees: BTreeSet<Committee>,
}

impl WinnerSet {
    pub(crate) fn new(k: usize, committees: BTreeSet<Committee>) -> Self {
        debug_assert!(!committees.is_empty());
        debug_assert!(committees.iter().all(|c| c.len() == k));
        WinnerSet { k, committees }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn committees(&self) -> &BTreeSet<Committee> {
        &self.committees
    }

    pub fn len(&self) -> usize {
        self.committees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.committees.is_empty()
    }

    pub fn contains(&self, c: &Committee) -> bool {
        self.committees.contains(c)
    }

    /// The single winner, if the outcome is not tied.
    pub fn unique(&self) -> Option<&Committee> {
        if self.committees.len() == 1 {
            self.committees.iter().next()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Committee> {
        self.committees.iter()
    }

    pub fn to_json(&self, e: &Election) -> WinnerSetJson {
        WinnerSetJson {
            k: self.k,
            committees: self.committees.iter().map(|c| c.names(e)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WinnerSetJson {
    pub k: usize,
    pub committees: Vec<Vec<String>>,
}

/// Winner set under default budgets.
pub fn winners(e: &Election, spec: &RuleSpec) -> Result<WinnerSet> {
    winners_with(e, spec, &Budget::default())
}

pub fn winners_with(e: &Election, spec: &RuleSpec, budget: &Budget) -> Result<WinnerSet> {
    let m = e.num_candidates();
    let k = spec.k;
    if k == 0 || k > m {
        return Err(Error::domain(format!("committee size {k} outside 1..={m}")));
    }
    match spec.rule {
        Rule::Sntv | Rule::Bloc | Rule::KBorda | Rule::KCopeland { .. } => {
            let scores = individual_scores(e, spec).expect("score-based rule");
            scoring::top_k_ties(&scores, k, budget)
        }
        Rule::Ned => condorcet::ned_winners(e, k, budget),
        Rule::BetaCc => cc::cc_winners(e, k, budget),
        Rule::Stv { ties } => stv::stv_winners(e, k, ties, budget),
        Rule::HybridBordaCc { ell } => hybrid::hybrid_winners_with(e, k, ell, budget),
    }
}

/// Per-candidate scores of the score-based rules (Copeland scaled by the
/// denominator of alpha so the values stay integral); `None` otherwise.
pub fn individual_scores(e: &Election, spec: &RuleSpec) -> Option<Vec<i64>> {
    let k = spec.k;
    Some(match spec.rule {
        Rule::Sntv => scoring::scores(e, Scoring::Approval(1)),
        Rule::Bloc => scoring::scores(e, Scoring::Approval(k)),
        Rule::KBorda => scoring::scores(e, Scoring::Borda),
        Rule::KCopeland { alpha } => condorcet::copeland_scores(e, alpha),
        _ => return None,
    })
}

/// Committee score whose maximizers are exactly the winners, for the rules
/// that have one (all except STV).
pub fn committee_score(e: &Election, spec: &RuleSpec, s: &Committee) -> Option<i64> {
    if let Some(scores) = individual_scores(e, spec) {
        return Some(s.members().iter().map(|&c| scores[c]).sum());
    }
    match spec.rule {
        Rule::Ned => Some(condorcet::ned_score(&crate::majority::margins(e), s)),
        Rule::BetaCc => Some(cc_score(e, s)),
        _ => None,
    }
}

/// Exact score report used by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScoreReport {
    /// Per-candidate scores; `scale` divides them (Copeland with fractional
    /// alpha), 1 otherwise.
    Candidates { scores: Vec<i64>, scale: i64 },
    /// Score shared by every winning committee.
    Committee { score: i64 },
    None,
}

pub fn score_report(e: &Election, spec: &RuleSpec, w: &WinnerSet) -> ScoreReport {
    if let Some(scores) = individual_scores(e, spec) {
        let scale = match spec.rule {
            Rule::KCopeland { alpha } => *alpha.denom(),
            _ => 1,
        };
        return ScoreReport::Candidates { scores, scale };
    }
    match w.iter().next().and_then(|c| committee_score(e, spec, c)) {
        Some(score) => ScoreReport::Committee { score },
        None => ScoreReport::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_compact_specs() {
        assert_eq!("sntv:k=3".parse::<RuleSpec>().unwrap(), RuleSpec::sntv(3));
        assert_eq!(
            "copeland:k=3,alpha=0.5".parse::<RuleSpec>().unwrap(),
            RuleSpec::copeland(3, Ratio::new(1, 2))
        );
        assert_eq!(
            "hybrid:k=4,ell=2".parse::<RuleSpec>().unwrap(),
            RuleSpec::hybrid(4, 2)
        );
        assert_eq!(
            "stv:k=3,ties=pu".parse::<RuleSpec>().unwrap(),
            RuleSpec::stv(3, StvTies::ParallelUniverses)
        );
        assert_eq!(
            "stv:k=2,ties=lex".parse::<RuleSpec>().unwrap(),
            RuleSpec::stv(2, StvTies::Lexicographic)
        );
        assert_eq!(
            RuleSpec::parse_with_default_k("cc", Some(3)).unwrap(),
            RuleSpec::beta_cc(3)
        );
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "sntv",
            "sntv:k=0",
            "nope:k=2",
            "copeland:k=2,alpha=2",
            "hybrid:k=2",
            "hybrid:k=2,ell=3",
            "sntv:k=2,alpha=0.5",
            "stv:k=2,ties=coin",
            "sntv:k",
        ] {
            assert!(
                matches!(bad.parse::<RuleSpec>(), Err(Error::InvalidSpec(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "sntv:k=3",
            "copeland:k=3,alpha=1/2",
            "hybrid:k=4,ell=2",
            "stv:k=3,ties=lex",
            "cc:k=2",
        ] {
            let spec: RuleSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn decimal_ratios() {
        assert_eq!(parse_ratio("0.25"), Some(Ratio::new(1, 4)));
        assert_eq!(parse_ratio("1"), Some(Ratio::from_integer(1)));
        assert_eq!(parse_ratio(".5"), Some(Ratio::new(1, 2)));
        assert_eq!(parse_ratio("1/3"), Some(Ratio::new(1, 3)));
        assert_eq!(parse_ratio("a"), None);
    }

    #[test]
    fn k_larger_than_m_is_a_domain_error() {
        let e = Election::from_votes(2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            winners(&e, &RuleSpec::sntv(3)),
            Err(Error::Domain(_))
        ));
    }
}
