use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operands live over different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("matrix does not intertwine the action of basis element {0}")]
    NotIntertwining(String),
    #[error("ideal is not admissible for the given bound: path {0} survives reduction")]
    NotAdmissible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
