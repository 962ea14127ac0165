use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid signature ({p},{q}): {reason}")]
    InvalidSignature { p: usize, q: usize, reason: String },

    /// The operation needs `q` irreducible with a real nullcone: `p, q >= 1`
    /// and `p + q >= 3`.
    #[error("signature ({p},{q}) is inadmissible: {reason}")]
    InadmissibleSignature { p: usize, q: usize, reason: String },

    #[error("tensor violates {count} symmetry identities (first: {first})")]
    SymmetryViolation { count: usize, first: String },

    #[error("operator is not an isometry of the model metric")]
    NotIsometry,

    #[error("odd exponent required, got {0}")]
    EvenPower(u32),

    #[error("entry ({row},{col}) is not divisible by q")]
    NotDivisible { row: usize, col: usize },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    /// A lemma whose hypotheses exclude the given parameters.
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
