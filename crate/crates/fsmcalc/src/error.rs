use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operand networks belong to different symbol tables")]
    TableMismatch,

    #[error("{op} requires automaton operands (all labels identity pairs)")]
    NotAnAutomaton { op: &'static str },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbalanced delimiter: {0}")]
    UnbalancedDelimiter(String),

    #[error("nested `^[` inside a delimited region")]
    NestedDelimiter,

    #[error("cyclic delimited region (a region must be acyclic)")]
    CyclicRegion,

    #[error("compiled region output contains a reserved delimiter symbol (from `{text}`)")]
    ReservedDelimiter { text: String },

    #[error("regex error in delimited region `{text}`: {source}")]
    Region {
        text: String,
        #[source]
        source: Box<Error>,
    },

    #[error("class error: {0}")]
    Class(String),

    #[error("{0}")]
    Usage(String),

    #[error("lexicon error at line {line}: {msg}")]
    Lexicon { line: usize, msg: String },

    #[error("script error at line {line}: {msg}")]
    Script { line: usize, msg: String },

    #[error("bad network file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
