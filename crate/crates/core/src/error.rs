use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search budget exceeded: {needed} > {limit} ({what})")]
    Budget { what: &'static str, needed: u128, limit: u128 },

    #[error("unknown catalog graph `{0}`")]
    Catalog(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no cycle")]
    NoCycle,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
