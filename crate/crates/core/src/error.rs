use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("usage error: {0}")]
    Usage(String),

    /// An operator was applied outside the part of the bilattice it is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "resource cutoff exceeded: {what} needs {needed}, limit is {limit} \
         (raise it with CITSOLVE_CUTOFF={key}=<n>)"
    )]
    Resource {
        what: String,
        needed: u128,
        limit: u128,
        key: &'static str,
    },

    #[error("operator is not monotone: {0}")]
    NonMonotone(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid CIT: {0}")]
    InvalidCit(String),

    #[error("leaf over {{{}}}: {source}", scope.join(", "))]
    Leaf {
        scope: Vec<String>,
        #[source]
        source: Box<Error>,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Strips [`Error::Leaf`] wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Leaf { source, .. } => source.root_cause(),
            other => other,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self.root_cause(), Error::Resource { .. })
    }
}
