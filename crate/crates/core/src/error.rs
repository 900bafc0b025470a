use thiserror::Error;

/// Errors raised by the group computations and the text front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator a{index} is not part of this factor (valid: a{first}..a{last})", index = .0 + 1, first = .1 + 1, last = .2)]
    InvalidGenerator(usize, usize, usize),

    #[error("invalid cyclic order {0}: finite orders must be at least 2 (0 encodes infinity)")]
    InvalidOrder(u64),

    #[error("a factor needs at least one generator")]
    EmptyFactor,

    #[error("words belong to different presentations")]
    PresentationMismatch,

    #[error("{0} must have infinite order")]
    FiniteOrder(&'static str),

    #[error("{0} must be cyclically reduced")]
    NotCyclicallyReduced(&'static str),

    #[error("amalgamated subgroup is not proper: {0}")]
    ImproperAmalgam(String),

    #[error("split index p = {p} out of range 1..={max}")]
    SplitOutOfRange { p: usize, max: usize },

    #[error("tuple index {index} out of bounds for tuple of length {len}")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("invalid Nielsen move: {0}")]
    InvalidMove(String),

    #[error("tuples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("empty generating tuple")]
    EmptyTuple,

    #[error("classification handles at most 4 generators, got {0}")]
    TooManyGenerators(usize),

    #[error("orientation mismatch: cannot compare a leading half with a rear half")]
    OrientationMismatch,

    #[error("{0} is not a canonical coset representative")]
    NotCanonical(String),

    #[error("step budget of {0} moves exhausted before the tuple stabilised")]
    StepBudgetExceeded(usize),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
