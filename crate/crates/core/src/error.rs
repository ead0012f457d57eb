use thiserror::Error;

/// Failure modes shared by every numeric routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: argument {0} is within the guard distance of a non-positive integer")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("imaginary residue {residue:e} exceeds {limit:e}; the finite sum did not cancel")]
    Cancellation { residue: f64, limit: f64 },

    #[error("quadrature did not converge: estimated error {estimate:e} after {subdivisions} subdivisions")]
    Convergence { estimate: f64, subdivisions: usize },

    #[error("tolerance {target:e} is unreachable with {terms} terms (bound {bound:e})")]
    ToleranceUnreachable {
        target: f64,
        terms: usize,
        bound: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
