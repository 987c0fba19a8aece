use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by t^{power}: coefficient of t^{offending} is nonzero")]
    NotDivisible { power: usize, offending: usize },

    #[error("invalid column profile: {0}")]
    InvalidProfile(String),

    #[error("invalid endpoints: {0}")]
    InvalidEndpoints(String),

    #[error("column {column} out of range 1..={m}")]
    ColumnOutOfRange { column: usize, m: usize },

    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("tuple length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("not a strictly increasing tuple of positive integers: {0:?}")]
    NotIncreasing(Vec<u32>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("enumeration exceeded its step budget of {0}")]
    BudgetExceeded(u64),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("value table has no entry for {0:?}")]
    MissingValue(Vec<u32>),
}
