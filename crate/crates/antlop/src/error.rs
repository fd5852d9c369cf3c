//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by instance handling, solver configuration and the
/// benchmark harness.
#[derive(Debug, Error)]
pub enum LopError {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance header is missing or does not describe a usable matrix.
    #[error("invalid instance header: {0}")]
    InvalidHeader(String),

    /// A token could not be read as a number. Positions are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The file ended before the full weight matrix was read.
    #[error("truncated instance: expected {expected} matrix entries, found {found}")]
    Truncated { expected: usize, found: usize },

    /// The exhaustive oracle refuses instances beyond its size limit.
    #[error("instance size {n} exceeds the exhaustive search limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    /// A benchmark config or optima sidecar file is malformed.
    #[error("bad config: {0}")]
    Config(String),

    /// A selection was requested but every node is visited or blocked.
    #[error("no candidate nodes available for selection")]
    NoCandidates,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LopError>;
