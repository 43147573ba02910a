use thiserror::Error;

/// Errors surfaced by the separability toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Input contained NaN or infinite values.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// Shape or index bound violated.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Structurally invalid input (negative eigenvalue, zero polynomial, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The moment sequence admits no representing measure (a Hankel matrix
    /// fails the positivity test).
    #[error("infeasible moment sequence: {0}")]
    Infeasible(String),

    /// An iterative routine failed to reach its target accuracy.
    #[error("numerical failure in {context}: best residual {residual:.3e}")]
    Numerical { context: String, residual: f64 },

    /// The verdict sits inside the tolerance band and its certificate could
    /// not be validated; the caller should inspect rather than trust it.
    #[error("tolerance diagnostic: {0}")]
    Tolerance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
