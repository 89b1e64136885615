use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("model mismatch: element of X_{left} combined with element of X_{right}")]
    ModelMismatch { left: u8, right: u8 },

    #[error("expected a homogeneous class of degree {expected}: {what}")]
    NotHomogeneous { expected: usize, what: String },

    /// `offset` is the one-based byte position of the offending input.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("division by zero in rational literal at offset {offset}")]
    DivisionByZero { offset: usize },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("presentation inconsistency for S^{m} F_{c}({b}): {detail}")]
    Presentation {
        c: u8,
        m: u32,
        b: i64,
        detail: String,
    },

    #[error("ledger parse error{}: {message}", entry.as_ref().map(|e| format!(" in entry {e:?}")).unwrap_or_default())]
    LedgerParse {
        entry: Option<String>,
        message: String,
    },

    #[error("ledger schema error in entry {entry:?}: {message}")]
    LedgerSchema { entry: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
