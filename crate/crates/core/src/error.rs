use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("non-generic configuration: {0}")]
    NonGenericConfiguration(String),
    #[error("violated structure: {0}")]
    ViolatedStructure(String),
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
