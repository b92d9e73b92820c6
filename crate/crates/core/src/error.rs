use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown operator `{symbol}` at offset {position}")]
    UnknownOperator { position: usize, symbol: String },
    #[error("identity has no `=` separator")]
    MissingEquals,
    #[error("catalog line {line}: {message}")]
    Catalog { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra size must be at least 1")]
    EmptyCarrier,
    #[error("algebra size {0} is too large for the table encoding")]
    TooLarge(usize),
    #[error("table has {found} entries, expected {expected}")]
    WrongShape { expected: usize, found: usize },
    #[error("table entry {value} at ({row}, {col}) is outside 0..{size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("canonical form needs size <= {bound}, got {size}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("malformed algebra: {0}")]
    Format(String),
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("identity `{0}` is not of the shape (t1 -> t2) -> t3 on both sides")]
    NotTransferShaped(String),
    #[error("size {0} is outside the enumeration bounds")]
    SizeOutOfBounds(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
