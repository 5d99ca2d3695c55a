use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    /// No closed form applies; the caller may fall back to integration.
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("unsupported term: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, NumError>;

impl From<hodgecor_core::Error> for NumError {
    fn from(e: hodgecor_core::Error) -> Self {
        match e {
            hodgecor_core::Error::Domain(s) => NumError::Domain(s),
            hodgecor_core::Error::Unsupported(s) => NumError::Unsupported(s),
            other => NumError::Config(other.to_string()),
        }
    }
}
