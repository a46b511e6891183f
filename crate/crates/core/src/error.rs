use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("mark {mark} out of range for {leaves} leaves")]
    MarkOutOfRange { mark: usize, leaves: usize },
    #[error("element is not oriented (its graph is not bipartite)")]
    NotOriented,
    #[error("element is not in F (mark != 1): {0}")]
    NotInF(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("inadmissible parameter: {0}")]
    Inadmissible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
