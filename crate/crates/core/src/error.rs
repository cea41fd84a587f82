//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by constructors and operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix expected to be Hermitian deviates from its adjoint.
    #[error("matrix is not Hermitian (deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A matrix expected to be unitary fails `U\u{2020}U = 1`.
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    /// A matrix fails the density-matrix invariants.
    #[error("not a valid quantum state: {0}")]
    NotAState(String),

    /// A Choi matrix has a negative eigenvalue beyond tolerance.
    #[error("map is not completely positive (min Choi eigenvalue {0:.3e})")]
    NotCompletelyPositive(f64),

    /// Measurement or Kraus operators exceed the completeness bound.
    #[error(
        "operator family violates the completeness bound (max eigenvalue of the sum: {0:.12})"
    )]
    CompletenessBound(f64),

    /// A vector family is not an orthonormal, complete basis.
    #[error("not an orthonormal complete basis: {0}")]
    InvalidBasis(String),

    /// A quantity that must be real has a large imaginary part.
    #[error("value is not real (imaginary part {0:.3e})")]
    NotReal(f64),

    /// Post-selection weight too small to condition on.
    #[error("post-selection weight {0:.3e} is below threshold")]
    ZeroPostSelection(f64),

    /// A numeric parameter is outside its allowed range.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// Malformed input that is not covered by a more specific variant.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
