use thiserror::Error;

use crate::parse::ParseError;

/// Errors produced across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),

    /// An expression referenced a gene that was never declared.
    #[error("unknown gene `{name}`")]
    UnknownGene { name: String },

    /// DNF conversion or negation exceeded the term cap.
    #[error("DNF expansion produced more than {cap} terms")]
    TermOverflow { cap: usize },

    /// The network is too large for the requested analysis.
    #[error("network has {genes} genes but {context} supports at most {limit}")]
    TooLarge {
        genes: usize,
        limit: usize,
        context: &'static str,
    },

    /// A state sequence handed to a cycle check is not a cycle of the dynamics.
    #[error("not a cycle of the dynamics: {reason}")]
    NotACycle { reason: String },

    /// An attractor overlapped the exclusion set — duplicate discovery.
    #[error("state {state} is already excluded (duplicate attractor discovery)")]
    ExclusionOverlap { state: String },

    /// Engine configuration violated its invariants.
    #[error("invalid engine config: {0}")]
    InvalidEngineConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
