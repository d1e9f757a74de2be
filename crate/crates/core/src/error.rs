use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain an operation accepts.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tree handed in does not satisfy the fixed-locus graph invariants.
    #[error("invalid tree: {0}")]
    InvalidTree(String),

    /// A weight assignment made some factor vanish. The caller must redraw
    /// weights for the whole sum.
    #[error("degenerate weights: {0}")]
    DegenerateWeights(String),

    #[error("dimension mismatch: conditions sum to {supplied}, expected 2n(d+1)-1 = {expected}")]
    DimensionMismatch { expected: u64, supplied: u64 },

    #[error("codimension {codim} outside 2..={max}")]
    CodimensionRange { codim: u32, max: u32 },

    /// Expected exactly one multiplicity per codimension 2..=2n+1.
    #[error("expected {expected} condition entries, got {got}")]
    ConditionArity { expected: usize, got: usize },

    /// Independent evaluations disagreed or produced a non-integer. Always an
    /// implementation bug, never user error.
    #[error("verification failure: {0}")]
    Verification(String),

    #[error("census cache: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
