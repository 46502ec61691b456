use thiserror::Error;

/// Errors produced by construction, metric and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Alphabet sizes below 2 are rejected everywhere.
    #[error("alphabet size d must be at least 2, got {0}")]
    AlphabetTooSmall(u32),

    /// Word lengths below 1 are rejected everywhere.
    #[error("word length k must be at least 1, got {0}")]
    LengthTooSmall(i64),

    #[error("digit {digit} out of range [0, {d})")]
    DigitOutOfRange { digit: u32, d: u32 },

    #[error("word {word:?} violates the successor rule at position {position}")]
    NotAdmissible { word: String, position: usize },

    #[error("vertex index {index} out of range for digraph of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Raised instead of silently producing an enormous object.
    #[error("resource cap exceeded: {what} would need {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    /// Diameter-style queries refuse disconnected digraphs and name a witness.
    #[error("digraph is not strongly connected: no directed path from {from:?} to {to:?}")]
    Disconnected { from: String, to: String },

    #[error("cycle parameter out of range: {0}")]
    BadCycleParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A claimed internal identity failed; this is a library defect.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
