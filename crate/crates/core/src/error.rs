use thiserror::Error;

/// Failure modes shared by every evaluator and analysis in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Argument outside the range the implementation supports.
    #[error("range error: {0}")]
    Range(String),
    /// Evaluation requested at a pole.
    #[error("pole at {0}")]
    Pole(String),
    /// An iteration did not converge within its budget.
    #[error("no convergence: {0}")]
    NonConvergence(String),
    /// Double precision is insufficient for the requested quantity.
    #[error("precision loss: {0}")]
    Precision(String),
}

impl Error {
    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Range(_) | Error::Pole(_) => 2,
            Error::NonConvergence(_) | Error::Precision(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
