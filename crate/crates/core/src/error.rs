use std::path::PathBuf;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what} is outside the domain at s = {s}")]
    Domain { what: String, s: f64 },

    #[error("invalid parameter for {what}: {reason}")]
    InvalidParam { what: String, reason: String },

    #[error("no admissible interval exists for {what}")]
    EmptyDomain { what: String },

    #[error("fractional-linear map has a pole at r = {r}")]
    Pole { r: f64 },

    #[error("fractional-linear map is degenerate: ad - bc = {det}")]
    InvalidMap { det: f64 },

    #[error("adaptive quadrature on [{a}, {b}] did not reach the target {target:e} (estimate {estimate:e})")]
    QuadratureFailure { a: f64, b: f64, target: f64, estimate: f64 },

    #[error("finite-difference stencil unavailable at index {index}: {reason}")]
    InsufficientStencil { index: usize, reason: String },

    #[error("Airy argument x = {x} is outside the supported range [-{limit}, {limit}]")]
    OverflowRange { x: f64, limit: f64 },

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(what: impl Into<String>, s: f64) -> Self {
        Error::Domain { what: what.into(), s }
    }

    pub(crate) fn invalid(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            what: what.into(),
            reason: reason.into(),
        }
    }
}
