use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed cycle notation; `token` is the offending piece of input.
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    /// Malformed line in a group definition file.
    #[error("line {line}: {message}")]
    FileSyntax { line: usize, message: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A configured cap was exceeded. `reached` is how far the computation got.
    #[error("{what}: cap {limit} exceeded (reached {reached})")]
    Resource {
        what: String,
        limit: usize,
        reached: usize,
    },

    #[error("{0} is not a member of the group")]
    NotMember(String),

    #[error("subgroups have different parent groups")]
    ParentMismatch,

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent computations of the same object disagreed.
    #[error("internal consistency failure in {what}: {left} != {right}")]
    Consistency {
        what: String,
        left: String,
        right: String,
    },

    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, limit: usize, reached: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
            reached,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
