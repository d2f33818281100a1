use thiserror::Error;

use crate::validity::Verdict;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad argument to an operation (vertex out of range, not a matching, ...).
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("multigraph rejected: duplicate vertex pair {{{0}, {1}}}")]
    Multigraph(usize, usize),

    #[error("self-loop rejected at vertex {0}")]
    SelfLoop(usize),

    #[error("weight must be nonzero (edge {{{0}, {1}}})")]
    ZeroWeight(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("perfect matching cap exceeded ({cap} matchings)")]
    CapExceeded { cap: usize },

    /// The operation requires a valid (and non-vacuous) experiment graph.
    #[error("graph is not a valid experiment graph ({} violating colorings)", .0.violations.len())]
    InvalidGraph(Box<Verdict>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("monoedge property violated: {0}")]
    MonoedgeViolated(String),

    /// A runtime re-check of a pruning rule failed. Signals a bug or a
    /// counterexample, never a user error.
    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
