use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The element does not generate the algebra (singular power basis or
    /// vanishing leading coordinate).
    #[error("not a generator: {0}")]
    NotAGenerator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
