use thiserror::Error;

/// Errors raised by twist construction, insertion and the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pipes {0} and {1} cross more than once")]
    DoubleCrossing(usize, usize),
    #[error("pipe {pipe} does not reach its exit")]
    BadEndpoint { pipe: usize },
    #[error("box ({row}, {col}) is not an interior box of the shape")]
    OutOfShape { row: usize, col: usize },
    #[error("box ({row}, {col}) is not an elbow")]
    NotAnElbow { row: usize, col: usize },
    #[error("box ({row}, {col}) is a boundary elbow")]
    BoundaryElbow { row: usize, col: usize },
    #[error("pipes {0} and {1} do not cross")]
    NotFlippable(usize, usize),
    #[error("label {0} is already present")]
    DuplicateLabel(u32),
    #[error("label {0} is not a source of the contact graph")]
    NotASource(u32),
    #[error("label {0} is not present")]
    MissingLabel(u32),
    #[error("input relation has a directed cycle")]
    CyclicInput,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("operands belong to different bases")]
    MixedBasis,
    #[error("operator has length {got}, expected {expected}")]
    BadOperatorLength { got: usize, expected: usize },
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
