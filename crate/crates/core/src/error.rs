//! Error type shared by all modules.

/// Errors raised by genome handling, operators, landscapes and drivers.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Shape violation: a value does not structurally fit its companion
    /// (chromosome vs. spec length, schema vs. chromosome, objective arity).
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A value lies outside its legal domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was applied to a value in the wrong state
    /// (typically an unevaluated individual).
    #[error("state error: {0}")]
    State(String),

    /// Invalid run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// A structurally valid but unsupported combination was requested.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn state(msg: impl Into<String>) -> Self {
        Error::State(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
