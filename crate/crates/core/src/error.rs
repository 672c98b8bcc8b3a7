use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} outside 2..=36")]
    Alphabet(u32),
    #[error("length {0} outside 1..=64")]
    Length(usize),
    #[error("symbol {symbol} not valid for alphabet size {q}")]
    Symbol { symbol: char, q: u8 },
    #[error("shape mismatch: ({q1}, {n1}) vs ({q2}, {n2})")]
    ShapeMismatch { q1: u8, n1: u8, q2: u8, n2: u8 },
    #[error("operation defined only for the binary alphabet (got q = {0})")]
    RequiresBinary(u8),
    #[error("empty collection")]
    Empty,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
