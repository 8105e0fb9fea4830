use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(i64, i64),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("singular matrix: determinant is {0}")]
    Singular(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("schema error in `{field}`: {msg}")]
    Schema { field: String, msg: String },
    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn schema(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema { field: field.into(), msg: msg.into() }
    }

    /// Schema problems are caller mistakes in the request shape; everything
    /// else is a domain-level failure.
    pub fn is_schema(&self) -> bool {
        matches!(self, Error::Schema { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
