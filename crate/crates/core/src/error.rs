use thiserror::Error;

/// Failures of the exact pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("internal consistency check `{check}` failed; residual: {residual}")]
    Consistency { check: String, residual: String },
    #[error("no admissible sample after {0} attempts")]
    SamplingExhausted(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not apparent: ratios {0:?} disagree")]
    NotApparent(Vec<String>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn consistency(check: &str, residual: impl std::fmt::Display) -> Error {
    Error::Consistency {
        check: check.to_string(),
        residual: residual.to_string(),
    }
}
