#![allow(dead_code)]

use committee_robustness::{Election, Ranking};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vote<R: Rng>(m: usize, rng: &mut R) -> Ranking {
    let mut v: Ranking = (0..m).collect();
    v.shuffle(rng);
    v
}

pub fn random_election<R: Rng>(m: usize, n: usize, rng: &mut R) -> Election {
    Election::from_votes(m, (0..n).map(|_| random_vote(m, rng)).collect()).unwrap()
}

/// Random election biased toward ties and near-unanimity: votes are
/// drawn from a small pool of rankings.
pub fn clustered_election<R: Rng>(m: usize, n: usize, rng: &mut R) -> Election {
    let pool: Vec<Ranking> = (0..rng.gen_range(1..=2)).map(|_| random_vote(m, rng)).collect();
    let votes = (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    Election::from_votes(m, votes).unwrap()
}
