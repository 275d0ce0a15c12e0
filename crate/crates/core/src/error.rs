use std::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid ink: {0}")]
    InvalidInk(String),

    #[error("empty ink: {0}")]
    EmptyInk(String),

    #[error("coordinate overflow: {0}")]
    Overflow(String),

    #[error("invalid token id {id}: {reason}")]
    InvalidToken { id: u32, reason: String },

    #[error("vocabulary budget of {target} is below the base vocabulary size {base}")]
    BudgetExhausted { base: usize, target: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),

    #[error("parse error at {location}: {message}")]
    ParseError { location: Location, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable, machine-parsable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInk(_) => "InvalidInk",
            Error::EmptyInk(_) => "EmptyInk",
            Error::Overflow(_) => "Overflow",
            Error::InvalidToken { .. } => "InvalidToken",
            Error::BudgetExhausted { .. } => "BudgetExhausted",
            Error::InvalidParams(_) => "InvalidParams",
            Error::ConfigMismatch(_) => "ConfigMismatch",
            Error::ParseError { .. } => "ParseError",
            Error::Io(_) => "Io",
        }
    }

    pub(crate) fn parse(location: Location, message: impl Into<String>) -> Self {
        Error::ParseError {
            location,
            message: message.into(),
        }
    }
}

/// Where in a source document a parse error was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column.
    Position { line: usize, column: usize },
    /// A field path such as `strokes[2]` or `merges[7]`.
    Field(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Position { line, column } => write!(f, "line {line}, column {column}"),
            Location::Field(path) => f.write_str(path),
        }
    }
}

impl From<&serde_json::Error> for Location {
    fn from(err: &serde_json::Error) -> Self {
        Location::Position {
            line: err.line(),
            column: err.column(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
