use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("outside the validity region: {0}")]
    Validity(String),
    #[error("requested entry ({k}, {n}) lies beyond the generated frontier")]
    Budget { k: usize, n: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("no convergence after {0} iterations")]
    NonConvergence(usize),
    #[error("bad parameter: {0}")]
    Parameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
