//! TOML experiment configuration.
//!
//! ```toml
//! m = 10
//! n = 50
//! k = 3
//! rules = ["sntv", "bloc", "kborda", "copeland:alpha=1/2", "cc", "stv:ties=lex"]
//! distribution = "mallows:phi=uniform"
//! phi_scope = "election"
//! simulations = 200
//! cap = 1000
//! seed = 7
//! out = "random_swaps.csv"
//! ```
//!
//! Every key is optional. Rules without an explicit `k` take the
//! top-level one. `dataset` names a PrefLib or JSON election whose votes
//! are resampled and overrides `distribution`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use committee_robustness::experiment::ExperimentConfig;
use committee_robustness::sampling::{Distribution, PhiScope, Source};
use committee_robustness::RuleSpec;
use serde::Deserialize;

use crate::{load_election, CliError};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub rules: Option<Vec<String>>,
    pub distribution: Option<String>,
    pub phi_scope: Option<String>,
    pub dataset: Option<PathBuf>,
    pub simulations: Option<usize>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Resolves the file into a library config; relative dataset paths are
    /// taken relative to `base`.
    pub fn resolve(&self, base: &Path) -> Result<ExperimentConfig, CliError> {
        let d = ExperimentConfig::default();
        let k = self.k.unwrap_or(d.k);
        let rules = match &self.rules {
            None => ExperimentConfig::default_rules(k),
            Some(list) => list
                .iter()
                .map(|r| RuleSpec::parse_with_default_k(r, Some(k)))
                .collect::<Result<_, _>>()?,
        };
        let distribution = match (&self.dataset, &self.distribution) {
            (Some(path), _) => Distribution::Dataset(Arc::new(load_election(&base.join(path))?)),
            (None, Some(s)) => s.parse()?,
            (None, None) => d.source.distribution.clone(),
        };
        let phi_scope = match self.phi_scope.as_deref() {
            None => PhiScope::default(),
            Some(s) => parse_phi_scope(s)?,
        };
        Ok(ExperimentConfig {
            rules,
            m: self.m.unwrap_or(d.m),
            n: self.n.unwrap_or(d.n),
            k,
            source: Source { distribution, phi_scope },
            simulations: self.simulations.unwrap_or(d.simulations),
            cap: self.cap.unwrap_or(d.cap),
            seed: self.seed.unwrap_or(d.seed),
        })
    }
}

pub fn parse_phi_scope(s: &str) -> Result<PhiScope, CliError> {
    match s {
        "election" | "per-election" => Ok(PhiScope::PerElection),
        "vote" | "per-vote" => Ok(PhiScope::PerVote),
        _ => Err(CliError::Usage(format!("unknown phi scope {s:?} (expected election or vote)"))),
    }
}
