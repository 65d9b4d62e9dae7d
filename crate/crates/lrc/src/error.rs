//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by code construction, parsing, and repair.
#[derive(Debug, Error)]
pub enum Error {
    /// Code parameters outside the supported range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A coordinate token or digit vector that does not belong to the code.
    #[error("invalid coordinate: {0}")]
    InvalidCoord(String),

    /// A word whose length does not match the code length.
    #[error("expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An axis index outside 1..=m.
    #[error("axis {axis} out of range for dimension {m}")]
    AxisOutOfRange { axis: usize, m: u32 },

    /// A coordinate with every digit below r, where a parity coordinate
    /// (at least one digit equal to r) was required.
    #[error("{0} is an information coordinate, not a parity coordinate")]
    NotParityCoord(String),

    /// Malformed textual input (matrix, word, pattern, or plan).
    #[error("parse error: {0}")]
    Parse(String),

    /// A repair step that reads a symbol still erased at that point.
    #[error("step {step} for {target} reads {reads}, which is still erased")]
    PlanOrder {
        step: usize,
        target: String,
        reads: String,
    },

    /// A repair step whose target is not erased at that point.
    #[error("step {step} repairs {target}, which is not erased")]
    PlanTarget { step: usize, target: String },

    /// A plan that stops while erased positions remain.
    #[error("plan leaves {remaining} erased position(s) unrepaired")]
    PlanIncomplete { remaining: usize },

    /// A repaired word that fails the parity checks, meaning the surviving
    /// symbols were not consistent with any codeword.
    #[error("repaired word is not a codeword; surviving symbols are inconsistent")]
    InconsistentWord,

    /// An enumeration that would exceed the configured work budget.
    #[error("work budget {budget} exceeded: {required} patterns required")]
    BudgetExceeded { budget: u64, required: u64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
