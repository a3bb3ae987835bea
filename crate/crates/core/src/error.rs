use thiserror::Error;

use crate::solver::RecoveryResult;

pub type Result<T> = std::result::Result<T, QptError>;

#[derive(Debug, Error)]
pub enum QptError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The solver stopped without meeting its tolerances. The best iterate
    /// found is kept so callers can still inspect or record it.
    #[error("solver did not converge after {} iterations (feasibility {:.3e})", .0.iterations, .0.feasibility_residual)]
    Convergence(Box<RecoveryResult>),
}

impl QptError {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        QptError::Dimension(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        QptError::Config(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        QptError::Numerical(msg.into())
    }
}
