//! Robustness radius: the fewest adjacent swaps that change the set of
//! winning committees.
//!
//! Solvers:
//! - [`radius_oracle`]: breadth-first search over swap sequences, exact up
//!   to its depth bound, for every rule.
//! - [`radius_sntv`], [`radius_bloc`], [`radius_kborda`]: exact and
//!   polynomial, via a per-pair dynamic program over voters.
//! - [`radius_cc_fpt`]: exact beta-CC solver, exponential only in the
//!   number of voters.

mod cc;
mod oracle;
mod positional;
mod stv;

pub use cc::{cc_unique_or_pair, radius_cc_fpt, shift_gain, CcOutcome, ShiftTable};
pub use oracle::radius_oracle;
pub use positional::{radius_bloc, radius_kborda, radius_positional, radius_sntv};
pub use stv::{stv_rank_lemma_check, stv_ranks};

use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::election::{Election, Swap};
use crate::error::{Error, Result};
use crate::rules::{Rule, RuleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusMethod {
    /// Breadth-first search.
    Oracle,
    /// Polynomial solver for SNTV, Bloc and k-Borda.
    Exact,
    /// Voter-partition solver for beta-CC.
    Fpt,
}

/// Minimum swap count (`None` when the outcome cannot change within the
/// solver's reach) and a swap sequence attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusResult {
    #[serde(serialize_with = "radius_or_unreachable")]
    pub radius: Option<usize>,
    pub witness: Vec<Swap>,
    pub method: RadiusMethod,
}

fn radius_or_unreachable<S: Serializer>(r: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_u64(*r as u64),
        None => s.serialize_str("unreachable"),
    }
}

impl RadiusResult {
    pub(crate) fn unreachable(method: RadiusMethod) -> Self {
        RadiusResult {
            radius: None,
            witness: Vec::new(),
            method,
        }
    }

    pub(crate) fn found(witness: Vec<Swap>, method: RadiusMethod) -> Self {
        RadiusResult {
            radius: Some(witness.len()),
            witness,
            method,
        }
    }
}

/// Which solver [`radius`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Oracle { max_depth: usize },
    Exact,
    Fpt,
    /// The exact solver when the rule has one, otherwise the oracle.
    Auto { max_depth: usize },
}

pub fn radius(spec: &RuleSpec, e: &Election, choice: SolverChoice, budget: &Budget) -> Result<RadiusResult> {
    let k = spec.k;
    match (choice, spec.rule) {
        (SolverChoice::Oracle { max_depth }, _) => radius_oracle(spec, e, max_depth, budget),
        (SolverChoice::Exact | SolverChoice::Auto { .. }, Rule::Sntv) => radius_sntv(e, k),
        (SolverChoice::Exact | SolverChoice::Auto { .. }, Rule::Bloc) => radius_bloc(e, k),
        (SolverChoice::Exact | SolverChoice::Auto { .. }, Rule::KBorda) => radius_kborda(e, k),
        (SolverChoice::Fpt | SolverChoice::Auto { .. }, Rule::BetaCc) => radius_cc_fpt(e, k, budget),
        (SolverChoice::Auto { max_depth }, _) => radius_oracle(spec, e, max_depth, budget),
        (SolverChoice::Exact, _) => Err(Error::domain(format!(
            "no exact polynomial solver for {}; use the oracle",
            spec.name()
        ))),
        (SolverChoice::Fpt, _) => Err(Error::domain(format!(
            "the voter-partition solver handles beta-CC only, not {}",
            spec.name()
        ))),
    }
}

/// Swaps moving the candidate at zero-based position `from` of `voter` up
/// to position `to`.
pub(crate) fn shift_up(voter: usize, from: usize, to: usize) -> impl Iterator<Item = Swap> {
    (to..from).rev().map(move |p| Swap::new(voter, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let r = RadiusResult::found(vec![Swap::new(0, 1)], RadiusMethod::Exact);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["radius"], 1);
        assert_eq!(j["method"], "exact");
        let u = serde_json::to_value(RadiusResult::unreachable(RadiusMethod::Oracle)).unwrap();
        assert_eq!(u["radius"], "unreachable");
    }

    #[test]
    fn shift_up_swaps() {
        let s: Vec<Swap> = shift_up(2, 3, 1).collect();
        assert_eq!(s, vec![Swap::new(2, 2), Swap::new(2, 1)]);
    }
}
