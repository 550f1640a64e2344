use thiserror::Error;

/// Errors raised by the algebra kernel and everything built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,

    #[error("too many variables: {0} (at most {max})", max = crate::algebra::MAX_VARS)]
    TooManyVariables(usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("budget exceeded after {pairs_processed} S-pairs ({queue_size} still queued)")]
    BudgetExceeded { pairs_processed: u64, queue_size: usize },

    #[error("budget exhausted after {minors_used} minors (singular locus dimension so far: {dimension:?})")]
    SingularLocusBudget { minors_used: usize, dimension: Option<i64> },

    #[error("graded piece of degree {0} is empty")]
    EmptyGradedPiece(u32),

    #[error("saturation did not stabilize within {0} steps")]
    SaturationCap(u32),

    #[error("integrality violated: {0}")]
    NonIntegral(String),

    #[error("improper link: {0}")]
    ImproperLink(String),

    #[error("no valid hypersurface found after {0} attempts")]
    NoValidHypersurface(u32),

    #[error("degenerate seed: {0}")]
    DegenerateSeed(String),

    #[error("unknown family id {0} (valid ids are 1..=11)")]
    UnknownFamily(u32),

    #[error("twist mismatch: {0}")]
    TwistMismatch(String),

    #[error("not a resolution: {0}")]
    NotAResolution(String),

    #[error("no matching found: {0}")]
    NoMatching(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
