use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (non-prime modulus, non-monic modulus,
    /// dimension mismatch, mismatched fields, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Inversion of zero in the base field.
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    /// An operand lies outside the domain of the operation (e.g. a non-unit
    /// passed to an order computation).
    #[error("domain error: {0}")]
    Domain(String),

    /// A factoring or enumeration budget was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A construction was requested for an automorphism that fails the
    /// transitivity gate.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Every piece denominator vanishes at the evaluation point.
    #[error("all {0} denominators vanish: point is not transitive-compatible")]
    NotTransitiveCompatible(usize),

    /// Direct iteration never came back to the affine chart.
    #[error("orbit trapped at infinity after {0} applications")]
    TrappedAtInfinity(u64),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
