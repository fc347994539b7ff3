use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed (no bracket, near-pole evaluation, no convergence).
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The request would exceed a configured resource cap.
    #[error("resource error: {0}")]
    Resource(String),
    /// A state does not have the register layout an operation needs.
    #[error("state error: {0}")]
    State(String),
    /// Spectral analysis could not identify the structure it looks for.
    #[error("analysis error: {0}")]
    Analysis(String),
    /// A numerical identity was checked and found violated.
    #[error("verification failure: {0}")]
    Verification(String),
    /// Physical model assumption violated (e.g. degenerate ground state).
    #[error("model error: {0}")]
    Model(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Numeric(_) => "numeric",
            Error::Resource(_) => "resource",
            Error::State(_) => "state",
            Error::Analysis(_) => "analysis",
            Error::Verification(_) => "verification",
            Error::Model(_) => "model",
            Error::Internal(_) => "internal",
        }
    }
}
