use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{label}` in sort `{sort}`")]
    DuplicateLabel { sort: String, label: String },

    #[error("edge `{edge}` has dangling endpoint `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },

    #[error("unknown sort `{0}`")]
    UnknownSort(String),

    #[error("unknown cell `{label}` in sort `{sort}`")]
    UnknownCell { sort: String, label: String },

    #[error("missing image for cell `{label}` in sort `{sort}`")]
    MissingCell { sort: String, label: String },

    #[error("base category mismatch: `{left}` vs `{right}`")]
    ShapeMismatch { left: String, right: String },

    #[error("map does not preserve structure: {0}")]
    NotStructurePreserving(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("expected a monomorphism: {0}")]
    NotMono(String),

    #[error("resource guard exceeded: more than {limit} search candidates")]
    GuardExceeded { limit: u64 },

    #[error("truncation cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("construction does not apply: {0}")]
    Inapplicable(String),

    #[error("{location}: {message}")]
    Document { location: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn document(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Document {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    /// True for errors caused by a resource guard or a truncation cap.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. } | Error::CapExceeded(_))
    }
}
