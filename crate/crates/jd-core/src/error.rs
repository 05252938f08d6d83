use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JdError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("label index {index} exceeds genus {genus}")]
    Genus { index: u8, genus: u8 },
    #[error("half-edge {0} is not paired exactly twice")]
    Unpaired(String),
    #[error("degree {n} exceeds the cap {cap}")]
    Cap { n: usize, cap: usize },
    #[error("{0}")]
    Domain(String),
    #[error("term outside stratum: {0}")]
    Stratum(String),
}

pub type Result<T> = std::result::Result<T, JdError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(JdError::Domain(msg.into()))
}
