//! `crob`: command-line access to winner determination, robustness radii,
//! robustness levels, adversarial constructions, sampling and the
//! random-swap experiment.
//!
//! Exit status: 0 on success, 1 on domain errors, 2 when a resource budget
//! is exceeded, 3 on parse or usage errors.

mod config;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use committee_robustness::experiment::run_experiment;
use committee_robustness::preflib::{read_preflib, write_preflib};
use committee_robustness::radius::{radius, SolverChoice};
use committee_robustness::robustness::{
    construct_cc_chaos, construct_gws_chaos, construct_hybrid_level, construct_stv_chaos, displacement_witness,
    empirical_level, LevelSearch,
};
use committee_robustness::sampling::{sample_election, Distribution, Source};
use committee_robustness::{winners_with, Budget, Election, Error, RuleSpec, Swap};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{parse_phi_scope, ConfigFile};

#[derive(Debug, Parser)]
#[command(name = "crob", version, about = "Multiwinner election robustness toolkit")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every winning committee.
    Winners(WinnersArgs),
    /// Fewest adjacent swaps that change the winner set.
    Radius(RadiusArgs),
    /// Largest committee displacement caused by a single swap.
    Level(LevelArgs),
    /// Emit one of the adversarial elections with its designated swap.
    Construct(ConstructArgs),
    /// Draw a random election.
    Sample(SampleArgs),
    /// Run the random-swap experiment and write a CSV report.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct WinnersArgs {
    /// Rule, e.g. `sntv:k=2` or `copeland:k=3,alpha=1/2`.
    #[arg(long)]
    rule: String,
    /// Election file, canonical JSON or PrefLib.
    #[arg(long)]
    election: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Oracle,
    Exact,
    Fpt,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    #[arg(long)]
    rule: String,
    #[arg(long)]
    election: PathBuf,
    /// Solver; by default the exact one when the rule has it.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Search depth for the oracle.
    #[arg(long, default_value_t = 6)]
    max_depth: usize,
}

#[derive(Debug, Args)]
struct LevelArgs {
    #[arg(long)]
    rule: String,
    /// Check this election instead of (or besides) random ones.
    #[arg(long)]
    election: Option<PathBuf>,
    /// Zero-based swap `voter,position`; with `--election` only this swap is
    /// measured, otherwise every swap of the election is.
    #[arg(long, requires = "election")]
    swap: Option<String>,
    /// Random (election, swap) trials; defaults to 200 without `--election`.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 5)]
    m: usize,
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value = "ic")]
    distribution: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    /// beta-CC: one swap replaces the whole committee.
    CcChaos,
    /// Weak Condorcet stability: one swap leaves only the other committee.
    GwsChaos,
    /// STV: one swap replaces the whole committee.
    StvChaos,
    /// (k-ell)-Borda-ell-CC hybrid.
    Hybrid,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Construction,
    #[arg(long)]
    k: usize,
    /// Number of CC seats for `hybrid`.
    #[arg(long)]
    ell: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Preflib,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// `ic`, `mallows:phi=0.5`, `mallows:phi=uniform` or `mix2:phi=..,weight=..`.
    #[arg(long, default_value = "ic")]
    distribution: String,
    /// Resample the votes of this election instead.
    #[arg(long, conflicts_with = "distribution")]
    dataset: Option<PathBuf>,
    /// Draw a uniform phi once per `election` or once per `vote`.
    #[arg(long, default_value = "election")]
    phi_scope: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// TOML configuration; every key is optional.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the full JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Override the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the configured number of simulations.
    #[arg(long)]
    simulations: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::Resource { .. }) => 2,
            CliError::Lib(Error::Parse { .. } | Error::InvalidSpec(_)) | CliError::Usage(_) => 3,
            CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

/// Reads canonical JSON when the file starts with `{`, PrefLib otherwise.
pub fn load_election(path: &Path) -> Result<Election, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parsed = if text.trim_start().starts_with('{') {
        Election::from_json_str(&text)
    } else {
        read_preflib(&text)
    };
    parsed.map_err(|e| match e {
        Error::Parse { line, message } => CliError::Usage(format!("{}:{line}: {message}", path.display())),
        other => CliError::Lib(other),
    })
}

fn parse_swap(s: &str) -> Result<Swap, CliError> {
    let bad = || CliError::Usage(format!("swap must be `voter,position`, got {s:?}"));
    let (v, p) = s.split_once(',').ok_or_else(bad)?;
    Ok(Swap::new(
        v.trim().parse().map_err(|_| bad())?,
        p.trim().parse().map_err(|_| bad())?,
    ))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ConstructOut {
    rule: String,
    election: committee_robustness::election::ElectionJson,
    swap: Swap,
}

fn winners_cmd(a: &WinnersArgs, budget: &Budget) -> Result<String, CliError> {
    let spec: RuleSpec = a.rule.parse()?;
    let e = load_election(&a.election)?;
    let w = winners_with(&e, &spec, budget)?;
    Ok(json(&w.to_json(&e)))
}

fn radius_cmd(a: &RadiusArgs, budget: &Budget) -> Result<String, CliError> {
    let spec: RuleSpec = a.rule.parse()?;
    let e = load_election(&a.election)?;
    let choice = match a.method {
        None => SolverChoice::Auto { max_depth: a.max_depth },
        Some(Method::Oracle) => SolverChoice::Oracle { max_depth: a.max_depth },
        Some(Method::Exact) => SolverChoice::Exact,
        Some(Method::Fpt) => SolverChoice::Fpt,
    };
    Ok(json(&radius(&spec, &e, choice, budget)?))
}

fn level_cmd(a: &LevelArgs, budget: &Budget) -> Result<String, CliError> {
    let spec: RuleSpec = a.rule.parse()?;
    let given = a.election.as_deref().map(load_election).transpose()?;
    if let (Some(e), Some(s)) = (&given, &a.swap) {
        return Ok(json(&displacement_witness(&spec, e, parse_swap(s)?, budget)?.to_json()));
    }
    let trials = a.trials.unwrap_or(if given.is_some() { 0 } else { 200 });
    let mut search = LevelSearch::new(a.m, a.n, trials, a.seed);
    search.source = Source::from(a.distribution.parse::<Distribution>()?);
    if let Some(e) = given {
        search.pool = (0..e.swap_slots()).map(|i| (e.clone(), e.slot_swap(i))).collect();
    }
    Ok(json(&empirical_level(&spec, &search, budget)?.to_json()))
}

fn construct_cmd(a: &ConstructArgs, budget: &Budget) -> Result<String, CliError> {
    let k = a.k;
    let (rule, (e, s)) = match a.kind {
        Construction::CcChaos => (format!("cc:k={k}"), construct_cc_chaos(k)?),
        Construction::GwsChaos => (format!("weak-stability:k={k}"), construct_gws_chaos(k)?),
        Construction::StvChaos => (format!("stv:k={k}"), construct_stv_chaos(k, budget)?),
        Construction::Hybrid => {
            let ell = a.ell.ok_or_else(|| CliError::Usage("hybrid needs --ell".into()))?;
            (format!("hybrid:k={k},ell={ell}"), construct_hybrid_level(k, ell)?)
        }
    };
    Ok(json(&ConstructOut { rule, election: e.to_json(), swap: s }))
}

fn sample_cmd(a: &SampleArgs) -> Result<String, CliError> {
    let distribution = match &a.dataset {
        Some(path) => Distribution::Dataset(Arc::new(load_election(path)?)),
        None => a.distribution.parse()?,
    };
    let source = Source { distribution, phi_scope: parse_phi_scope(&a.phi_scope)? };
    let e = sample_election(&source, a.m, a.n, &mut ChaCha8Rng::seed_from_u64(a.seed))?;
    Ok(match a.format {
        Format::Json => json(&e.to_json()),
        Format::Preflib => write_preflib(&e),
    })
}

/// Returns the CSV and, separately, where the config asked for it to go.
fn experiment_cmd(a: &ExperimentArgs, budget: &Budget) -> Result<(String, Option<PathBuf>), CliError> {
    let (file, base) = match &a.config {
        Some(path) => (
            ConfigFile::read(path)?,
            path.parent().map(Path::to_path_buf).unwrap_or_default(),
        ),
        None => (ConfigFile::default(), PathBuf::new()),
    };
    let mut cfg = file.resolve(&base)?;
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    if let Some(sims) = a.simulations {
        cfg.simulations = sims;
    }
    let report = run_experiment(&cfg, budget)?;
    if let Some(path) = a.json.as_ref().or(file.json.as_ref().map(|p| base.join(p)).as_ref()) {
        write_file(path, &json(&report))?;
    }
    Ok((report.to_csv(), file.out.map(|p| base.join(p))))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget = Budget::from_env();
    let (text, configured_out) = match &cli.command {
        Command::Winners(a) => (winners_cmd(a, &budget)?, None),
        Command::Radius(a) => (radius_cmd(a, &budget)?, None),
        Command::Level(a) => (level_cmd(a, &budget)?, None),
        Command::Construct(a) => (construct_cmd(a, &budget)?, None),
        Command::Sample(a) => (sample_cmd(a)?, None),
        Command::Experiment(a) => experiment_cmd(a, &budget)?,
    };
    match cli.out.or(configured_out) {
        Some(path) => write_file(&path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("crob: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
