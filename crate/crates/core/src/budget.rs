//! Exploration limits shared by the exhaustive algorithms.
//!
//! Every limit fails loudly with [`Error::Resource`](crate::Error::Resource)
//! when exceeded; nothing is truncated silently.

use std::env;

/// Limits for exhaustive enumeration and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of committees enumerated when computing a tie set.
    pub max_committees: u64,
    /// Maximum number of distinct STV states explored under
    /// parallel-universes tie-breaking.
    pub stv_branches: u64,
    /// Maximum number of elections stored by the breadth-first radius search.
    pub bfs_states: u64,
    /// Maximum number of voter partitions visited by the voter-parameterized
    /// Chamberlin-Courant algorithms.
    pub partitions: u64,
    /// Maximum number of votes a construction may generate.
    pub profile_votes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_committees: 2_000_000,
            stv_branches: 1_000_000,
            bfs_states: 4_000_000,
            partitions: 5_000_000,
            profile_votes: 2_000,
        }
    }
}

impl Budget {
    /// Default limits overridden by `CROB_MAX_COMMITTEES`, `CROB_STV_BRANCHES`,
    /// `CROB_BFS_STATES`, `CROB_PARTITIONS` and `CROB_PROFILE_VOTES` when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        let read = |name: &str, slot: &mut u64| {
            if let Some(v) = env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        };
        read("CROB_MAX_COMMITTEES", &mut b.max_committees);
        read("CROB_STV_BRANCHES", &mut b.stv_branches);
        read("CROB_BFS_STATES", &mut b.bfs_states);
        read("CROB_PARTITIONS", &mut b.partitions);
        read("CROB_PROFILE_VOTES", &mut b.profile_votes);
        b
    }
}
