use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the region where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A pivot vanished at working precision during LU factorization.
    #[error("singular matrix: pivot {pivot} in column {column} is below the noise floor")]
    Singular { column: usize, pivot: String },

    /// A normalizer or diagonal kernel value vanished.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A weight or Laplacian that must be positive was not.
    #[error("non-positive value: {0}")]
    NonPositive(String),

    /// Bisection was asked to bracket a root without a sign change.
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    /// A finite-difference stencil reached outside the available data.
    #[error("stencil error: {0}")]
    Stencil(String),

    /// Requested operation is not available for this weight or representation.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Singular { .. }
                | Error::Degenerate(_)
                | Error::NonPositive(_)
                | Error::NoSignChange { .. }
                | Error::Stencil(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
