use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid domain: {0}")]
    Domain(String),
    #[error("evaluation outside the declared analyticity neighbourhood: {0}")]
    OutsideAnalyticity(String),
    #[error("point too close to the support: {0}")]
    TooCloseToSupport(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("criticality detected: {0}")]
    Critical(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("operand not in the image of the operator: {0}")]
    NotInImage(String),
    #[error("cost guard: {0}")]
    CostGuard(String),
    #[error("missing dependency: {0}")]
    MissingDependency(String),
    #[error("verification mismatch: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
