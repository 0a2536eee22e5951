use thiserror::Error;

/// Errors produced by election operations, rule evaluation and solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid swap: voter {voter}, position {position} (election has {voters} voters, {candidates} candidates)")]
    InvalidSwap {
        voter: usize,
        position: usize,
        voters: usize,
        candidates: usize,
    },

    /// STV under parallel-universes tie-breaking needs `k * quota <= n`.
    #[error("unsupported committee size k={k} for n={n} voters: k is not normal")]
    UnsupportedCommitteeSize { n: usize, k: usize },

    /// A configured exploration budget was exceeded.
    #[error("resource limit exceeded: {what} (limit {limit}){detail}")]
    Resource {
        what: &'static str,
        limit: u64,
        detail: String,
    },

    /// Malformed rule, distribution or configuration string.
    #[error("invalid specification {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("construction error: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub(crate) fn resource(what: &'static str, limit: u64) -> Self {
        Error::Resource {
            what,
            limit,
            detail: String::new(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
