use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps [`Error::is_input_error`] to exit status 2 and everything
/// else to exit status 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: u128, bound: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("conductor mismatch: {have} does not divide {want}")]
    ConductorMismatch { have: u64, want: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::Parse { .. }
                | Error::MalformedPermutation(_)
                | Error::BoundExceeded { .. }
                | Error::Unsupported(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
