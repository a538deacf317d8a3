use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("optical data, line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("quadrature did not reach tolerance on [{lower}, {upper}]: estimate {estimate:e}, error {error:e} after {intervals} subintervals")]
    Quadrature {
        lower: f64,
        upper: f64,
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("Matsubara sum not converged after {terms} terms: tail estimate {tail:e} vs sum {sum:e}")]
    Convergence { terms: usize, tail: f64, sum: f64 },

    #[error("non-finite value: {0}")]
    Numeric(String),

    #[error("unknown material: {0}")]
    UnknownMaterial(String),

    #[error("unknown setup: {0}")]
    UnknownSetup(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::Convergence { .. } | Error::Numeric(_)
        )
    }
}
