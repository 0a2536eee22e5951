//! Random-swap experiment: how many uniformly random adjacent swaps it
//! takes, applied one after another, until a rule's winner set changes.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::election::Election;
use crate::error::{Error, Result};
use crate::rules::{winners_with, RuleSpec, StvTies};
use crate::sampling::{sample_election, Distribution, Source};

/// Result of one random walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkOutcome {
    pub swaps: usize,
    /// The cap was reached without any change.
    pub censored: bool,
}

/// Applies uniformly random swaps (each of the `n(m−1)` slots equally
/// likely) cumulatively until the winner set differs from the original,
/// or `cap` swaps have been made.
pub fn swaps_until_change<R: Rng + ?Sized>(
    spec: &RuleSpec,
    e: &Election,
    cap: usize,
    rng: &mut R,
    budget: &Budget,
) -> Result<WalkOutcome> {
    let base = winners_with(e, spec, budget)?;
    let censored = WalkOutcome { swaps: cap, censored: true };
    if spec.k == e.num_candidates() || e.swap_slots() == 0 {
        return Ok(censored);
    }
    let mut cur = e.clone();
    for t in 1..=cap {
        let s = cur.slot_swap(rng.gen_range(0..cur.swap_slots()));
        cur.swap_in_place(s);
        if winners_with(&cur, spec, budget)? != base {
            return Ok(WalkOutcome { swaps: t, censored: false });
        }
    }
    Ok(censored)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub rules: Vec<RuleSpec>,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub source: Source,
    pub simulations: usize,
    pub cap: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    /// SNTV, Bloc, k-Borda, k-Copeland with alpha 1/2, beta-CC and STV
    /// with lexicographic tie-breaking.
    pub fn default_rules(k: usize) -> Vec<RuleSpec> {
        vec![
            RuleSpec::sntv(k),
            RuleSpec::bloc(k),
            RuleSpec::kborda(k),
            RuleSpec::copeland(k, Ratio::new(1, 2)),
            RuleSpec::beta_cc(k),
            RuleSpec::stv(k, StvTies::Lexicographic),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        if self.simulations == 0 || self.cap == 0 {
            return Err(Error::domain("simulations and cap must be at least 1"));
        }
        if self.m < 2 || self.n == 0 {
            return Err(Error::domain("experiments need m ≥ 2 and n ≥ 1"));
        }
        if self.rules.is_empty() {
            return Err(Error::domain("no rules selected"));
        }
        if let Some(r) = self.rules.iter().find(|r| r.k == 0 || r.k > self.m) {
            return Err(Error::domain(format!("{r}: committee size outside 1..={}", self.m)));
        }
        Ok(())
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            rules: ExperimentConfig::default_rules(3),
            m: 10,
            n: 50,
            k: 3,
            source: Source::from(Distribution::ImpartialCulture),
            simulations: 200,
            cap: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SimResult {
    Done(WalkOutcome),
    Failed { error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleSummary {
    pub rule: String,
    /// Mean over finished simulations; censored walks count as `cap`.
    pub mean: f64,
    /// Sample standard deviation (zero for a single simulation).
    pub std: f64,
    pub censored: usize,
    pub failed: usize,
    pub results: Vec<SimResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub distribution: String,
    pub simulations: usize,
    pub cap: usize,
    pub seed: u64,
    pub rules: Vec<RuleSummary>,
}

impl ExperimentReport {
    pub fn summary(&self, rule: &str) -> Option<&RuleSummary> {
        self.rules.iter().find(|r| r.rule == rule)
    }

    /// One row per (rule, simulation): `rule,sim_index,swaps,censored`.
    /// Failed simulations have an empty `swaps` field and `error` as
    /// `censored`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rule,sim_index,swaps,censored\n");
        for r in &self.rules {
            for (i, s) in r.results.iter().enumerate() {
                let _ = match s {
                    SimResult::Done(w) => writeln!(out, "{},{},{},{}", csv_field(&r.rule), i, w.swaps, w.censored),
                    SimResult::Failed { .. } => writeln!(out, "{},{},,error", csv_field(&r.rule), i),
                };
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Independent stream for simulation `index`: one for the election, one
/// for the walk. All rules of a simulation share both, so rules are
/// compared on the same elections and the same swap sequences.
fn stream(seed: u64, index: usize, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * index as u64 + purpose);
    rng
}

pub fn run_experiment(cfg: &ExperimentConfig, budget: &Budget) -> Result<ExperimentReport> {
    cfg.validate()?;
    let per_sim: Vec<Vec<SimResult>> = (0..cfg.simulations)
        .into_par_iter()
        .map(|i| {
            let e = match sample_election(&cfg.source, cfg.m, cfg.n, &mut stream(cfg.seed, i, 0)) {
                Ok(e) => e,
                Err(err) => return vec![SimResult::Failed { error: err.to_string() }; cfg.rules.len()],
            };
            cfg.rules
                .iter()
                .map(|spec| match swaps_until_change(spec, &e, cfg.cap, &mut stream(cfg.seed, i, 1), budget) {
                    Ok(w) => SimResult::Done(w),
                    Err(err) => SimResult::Failed { error: err.to_string() },
                })
                .collect()
        })
        .collect();

    let rules = cfg
        .rules
        .iter()
        .enumerate()
        .map(|(j, spec)| {
            let results: Vec<SimResult> = per_sim.iter().map(|row| row[j].clone()).collect();
            let counts: Vec<f64> = results
                .iter()
                .filter_map(|r| match r {
                    SimResult::Done(w) => Some(w.swaps as f64),
                    SimResult::Failed { .. } => None,
                })
                .collect();
            let (mean, std) = mean_std(&counts);
            RuleSummary {
                rule: spec.to_string(),
                mean,
                std,
                censored: results
                    .iter()
                    .filter(|r| matches!(r, SimResult::Done(w) if w.censored))
                    .count(),
                failed: results.len() - counts.len(),
                results,
            }
        })
        .collect();

    Ok(ExperimentReport {
        m: cfg.m,
        n: cfg.n,
        k: cfg.k,
        distribution: cfg.source.distribution.to_string(),
        simulations: cfg.simulations,
        cap: cfg.cap,
        seed: cfg.seed,
        rules,
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
