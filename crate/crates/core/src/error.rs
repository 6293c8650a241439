use thiserror::Error;

use crate::automaton::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed automaton document: {0}")]
    Malformed(#[from] serde_json::Error),

    #[error("invalid automaton: {0}")]
    Invalid(ValidationReport),

    #[error("token `{0}` is not in the alphabet")]
    UnknownToken(String),

    #[error("letter index {0} is out of range for this alphabet")]
    UnknownLetter(usize),

    #[error("state {state} is out of range 1..={states}")]
    StateOutOfRange { state: u32, states: u32 },

    #[error("segment must be non-empty")]
    EmptySegment,

    #[error("start position {pos} is outside 1..={len}")]
    StartOutOfRange { pos: usize, len: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("separator `#` cannot be stripped of arrows")]
    SeparatorInWord,

    #[error("token `{0}` carries no arrow")]
    NoArrow(String),

    #[error("infeasible search configuration: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
