//! Multiwinner election rules and their robustness to adjacent swaps.
//!
//! The crate computes full winner sets for SNTV, Bloc, k-Borda,
//! k-Copeland^alpha, NED, Chamberlin-Courant (Borda), STV and the
//! Borda/CC hybrid; measures how far one adjacent swap can move the
//! outcome (robustness level); computes the minimum number of swaps that
//! change the outcome (robustness radius) with exact solvers and a
//! breadth-first oracle; and samples Impartial Culture and Mallows
//! profiles for random-swap experiments.

pub mod budget;
pub mod combinatorics;
pub mod election;
pub mod error;
pub mod experiment;
pub mod majority;
pub mod preflib;
pub mod radius;
pub mod robustness;
pub mod rules;
pub mod sampling;

pub use budget::Budget;
pub use election::{kendall_tau, Candidate, Committee, Election, Ranking, Swap};
pub use error::{Error, Result};
pub use rules::{winners, winners_with, Rule, RuleSpec, StvTies, WinnerSet};
