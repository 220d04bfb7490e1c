//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the operators, constructors and parsers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma-function argument is (within tolerance) a nonpositive integer
    /// in a position where no limiting convention applies.
    #[error("gamma pole at x = {x}")]
    Pole { x: f64 },

    /// The integer interval is too short for the requested operation.
    #[error("domain too small: need b - a >= {need}, got {got}")]
    DomainTooSmall { need: i64, got: i64 },

    /// A grid function is based at the wrong point for the operator.
    #[error("grid base mismatch: expected {expected}, got {got}")]
    BaseMismatch { expected: i64, got: i64 },

    /// The direct (convolution) form of the fractional difference is
    /// undefined at positive integer orders.
    #[error("direct method is undefined for integer order nu = {nu}")]
    IntegerOrderWithDirectMethod { nu: f64 },

    /// Fractional order outside the open interval (1, 2).
    #[error("order alpha = {alpha} outside (1, 2)")]
    InvalidOrder { alpha: f64 },

    /// A parameter violates an operation precondition.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// A boundary value problem specification is malformed.
    #[error("invalid BVP spec: {0}")]
    InvalidSpec(String),

    /// Input data has the wrong base, length or index set.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// The eigensolver did not converge.
    #[error("eigensolver failure: {0}")]
    SolverFailure(String),

    /// Malformed CSV or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
