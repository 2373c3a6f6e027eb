use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient size mismatch: {left} vs {right}")]
    AmbientMismatch { left: u32, right: u32 },

    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: u32, n: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ragged matrix: row {row} has length {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{what} = {value} is out of range ({allowed})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        allowed: String,
    },

    #[error("cochain does not vanish on the empty subset")]
    CochainNotNormalized,

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("cocycle has rule backing; a dense table is required")]
    RuleBacked,

    #[error("not a loop: {0}")]
    NotALoop(String),

    #[error("not a Steiner loop: {0}")]
    NotSteiner(String),

    #[error("not a normal subloop: {0}")]
    NotNormal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("missing image for generator x{0}")]
    MissingGenerator(u32),

    #[error("invalid Steiner triple system: {0}")]
    InvalidSts(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, value: impl Into<u64>, allowed: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            value: value.into(),
            allowed: allowed.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
