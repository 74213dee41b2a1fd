use thiserror::Error;

/// Errors raised by the recovery pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlvError {
    /// A point was evaluated outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A spectrum model is invalid or unsupported for the requested operation.
    #[error("model error: {0}")]
    Model(String),

    /// A matrix does not have Hermitian Toeplitz structure.
    #[error("structure error: max deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    Structure { deviation: f64, tolerance: f64 },

    /// The Gram matrix could not be factorized or is too ill-conditioned.
    #[error("conditioning error: {reason} (condition estimate {cond:e})")]
    Conditioning { reason: String, cond: f64 },

    /// The recovered spectrum does not reproduce the lags within tolerance.
    #[error("feasibility error: constraint residual {residual:e} exceeds tolerance {tolerance:e}")]
    Feasibility { residual: f64, tolerance: f64 },

    /// A numerical integral failed its convergence check.
    #[error("quadrature error: {0}")]
    Quadrature(String),

    /// Malformed input (lengths, non-finite values, invalid parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, PlvError>;
