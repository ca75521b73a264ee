use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Raised when a state that must be positive semidefinite is not.
    #[error("nonphysical state: minimum eigenvalue {min_eigenvalue:.6e}")]
    Nonphysical { min_eigenvalue: f64 },

    #[error("integration failure: {0}")]
    Integration(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
