use thiserror::Error;

/// Errors raised by the engine.
///
/// Every variant maps onto one of the CLI exit-code classes, see
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("no parameter up to the cap {cap} satisfies the containment")]
    NotFoundBelowCap { cap: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    /// Process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Domain(_) | Error::RingMismatch(_) | Error::PreconditionViolation(_) => 3,
            Error::NotFoundBelowCap { .. } | Error::Infeasible(_) => 4,
            Error::Internal(_) => 70,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
