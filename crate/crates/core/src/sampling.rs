//! Random preference profiles: Impartial Culture, Mallows, two-component
//! Mallows mixtures and resampling of an existing dataset.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::election::{check_permutation, kendall_tau, Election, Ranking};
use crate::error::{Error, Result};

/// `Z(m, phi) = 1 · (1 + phi) · (1 + phi + phi²) ⋯ (1 + ⋯ + phi^(m−1))`.
pub fn mallows_normalizer(m: usize, phi: f64) -> f64 {
    let mut z = 1.0;
    let mut row = 1.0; // 1 + phi + ... + phi^(i-1)
    let mut power = 1.0;
    for _ in 1..m {
        power *= phi;
        row += power;
        z *= row;
    }
    z
}

/// A Mallows model: central ranking and dispersion `phi ∈ (0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MallowsSpec {
    central: Ranking,
    phi: f64,
}

impl MallowsSpec {
    pub fn new(central: Ranking, phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= 1.0) {
            return Err(Error::domain(format!("phi={phi} outside (0, 1]")));
        }
        if !check_permutation(&central, central.len()) || central.is_empty() {
            return Err(Error::domain("central ranking must be a permutation"));
        }
        Ok(MallowsSpec { central, phi })
    }

    pub fn identity(m: usize, phi: f64) -> Result<Self> {
        MallowsSpec::new((0..m).collect(), phi)
    }

    pub fn central(&self) -> &[usize] {
        &self.central
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `phi^d(r, central) / Z`.
    pub fn probability(&self, r: &[usize]) -> Result<f64> {
        let d = kendall_tau(r, &self.central)?;
        Ok(self.phi.powi(d as i32) / mallows_normalizer(self.central.len(), self.phi))
    }

    /// Repeated insertion: the `i`-th candidate of the central ranking is
    /// inserted at index `j ≤ i` with probability proportional to
    /// `phi^(i − j)`, creating `i − j` inversions.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Ranking {
        let mut out: Ranking = Vec::with_capacity(self.central.len());
        for (i, &c) in self.central.iter().enumerate() {
            let mut total = 0.0;
            let mut w = 1.0;
            for _ in 0..=i {
                total += w;
                w *= self.phi;
            }
            let mut u = rng.gen::<f64>() * total;
            // walk from the bottom slot (weight 1) upward
            let mut j = i;
            let mut w = 1.0;
            loop {
                if u < w || j == 0 {
                    break;
                }
                u -= w;
                w *= self.phi;
                j -= 1;
            }
            out.insert(j, c);
        }
        out
    }
}

pub fn mallows_probability(spec: &MallowsSpec, r: &[usize]) -> Result<f64> {
    spec.probability(r)
}

/// Dispersion parameter of a Mallows component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phi {
    Fixed(f64),
    /// Drawn uniformly from (0, 1].
    Uniform,
}

/// Whether a `Phi::Uniform` draw happens once per election or per vote.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiScope {
    #[default]
    PerElection,
    PerVote,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    ImpartialCulture,
    /// Mallows around the identity ranking.
    Mallows { phi: Phi },
    /// Two Mallows components with independent uniformly random central
    /// rankings; each vote comes from the first component with
    /// probability `weight`.
    Mixture { phi: Phi, weight: f64 },
    /// Votes drawn uniformly with replacement from a fixed profile.
    Dataset(Arc<Election>),
}

/// A distribution plus the scope of its uniform phi draws.
#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    pub distribution: Distribution,
    pub phi_scope: PhiScope,
}

impl From<Distribution> for Source {
    fn from(distribution: Distribution) -> Self {
        Source {
            distribution,
            phi_scope: PhiScope::PerElection,
        }
    }
}

fn uniform_phi<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.gen::<f64>()
}

impl Phi {
    fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            Phi::Fixed(p) => p,
            Phi::Uniform => uniform_phi(rng),
        }
    }
}

fn uniform_ranking<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Ranking {
    let mut r: Ranking = (0..m).collect();
    r.shuffle(rng);
    r
}

/// Draws `n` independent votes over `m` candidates.
pub fn sample_election<R: Rng + ?Sized>(source: &Source, m: usize, n: usize, rng: &mut R) -> Result<Election> {
    if m == 0 || n == 0 {
        return Err(Error::domain("sampling needs m ≥ 1 and n ≥ 1"));
    }
    let per_vote = source.phi_scope == PhiScope::PerVote;
    let votes: Vec<Ranking> = match &source.distribution {
        Distribution::ImpartialCulture => (0..n).map(|_| uniform_ranking(m, rng)).collect(),
        Distribution::Mallows { phi } => {
            let fixed = phi.draw(rng);
            let mut votes = Vec::with_capacity(n);
            for _ in 0..n {
                let p = if per_vote { phi.draw(rng) } else { fixed };
                votes.push(MallowsSpec::identity(m, p)?.sample(rng));
            }
            votes
        }
        Distribution::Mixture { phi, weight } => {
            if !(0.0..=1.0).contains(weight) {
                return Err(Error::domain(format!("mixture weight {weight} outside [0,1]")));
            }
            let centrals = [uniform_ranking(m, rng), uniform_ranking(m, rng)];
            let fixed = [phi.draw(rng), phi.draw(rng)];
            let mut votes = Vec::with_capacity(n);
            for _ in 0..n {
                let which = usize::from(rng.gen::<f64>() >= *weight);
                let p = if per_vote { phi.draw(rng) } else { fixed[which] };
                votes.push(MallowsSpec::new(centrals[which].clone(), p)?.sample(rng));
            }
            votes
        }
        Distribution::Dataset(data) => {
            if data.num_candidates() != m {
                return Err(Error::domain(format!(
                    "dataset has {} candidates, {m} requested",
                    data.num_candidates()
                )));
            }
            let pool = data.votes();
            let votes = (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
            return data.with_votes(votes);
        }
    };
    Election::from_votes(m, votes)
}

impl FromStr for Distribution {
    type Err = Error;

    /// `ic`, `mallows:phi=0.5`, `mallows:phi=uniform`,
    /// `mix2:phi=uniform[,weight=0.5]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidSpec(format!("{s:?}: {msg}"));
        let (name, params) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut phi = None;
        let mut weight = None;
        for kv in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key.trim() {
                "phi" => {
                    phi = Some(match value.trim() {
                        "uniform" => Phi::Uniform,
                        v => {
                            let p: f64 = v.parse().map_err(|_| bad("bad phi"))?;
                            if !(p > 0.0 && p <= 1.0) {
                                return Err(bad("phi must lie in (0, 1]"));
                            }
                            Phi::Fixed(p)
                        }
                    })
                }
                "weight" => {
                    let w: f64 = value.trim().parse().map_err(|_| bad("bad weight"))?;
                    if !(0.0..=1.0).contains(&w) {
                        return Err(bad("weight must lie in [0, 1]"));
                    }
                    weight = Some(w);
                }
                _ => return Err(bad("unknown parameter")),
            }
        }
        match name {
            "ic" if phi.is_none() && weight.is_none() => Ok(Distribution::ImpartialCulture),
            "mallows" if weight.is_none() => Ok(Distribution::Mallows {
                phi: phi.ok_or_else(|| bad("mallows needs phi"))?,
            }),
            "mix2" => Ok(Distribution::Mixture {
                phi: phi.ok_or_else(|| bad("mix2 needs phi"))?,
                weight: weight.unwrap_or(0.5),
            }),
            _ => Err(bad("unknown distribution")),
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let phi = |p: &Phi| match p {
            Phi::Fixed(x) => x.to_string(),
            Phi::Uniform => "uniform".into(),
        };
        match self {
            Distribution::ImpartialCulture => write!(f, "ic"),
            Distribution::Mallows { phi: p } => write!(f, "mallows:phi={}", phi(p)),
            Distribution::Mixture { phi: p, weight } => write!(f, "mix2:phi={},weight={weight}", phi(p)),
            Distribution::Dataset(_) => write!(f, "dataset"),
        }
    }
}
