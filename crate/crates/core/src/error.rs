use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: String, found: String },

    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),

    #[error("leading recurrence coefficient is not a unit")]
    NotInvertibleCoefficient,

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("2 is not a unit in the coefficient ring")]
    TwoNotInvertible,

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("module rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("spec mismatch: {0}")]
    SpecMismatch(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("axis {axis} out of range for {dims} axes")]
    AxisOutOfRange { axis: usize, dims: usize },

    #[error("wrong variable count: expected {expected}, found {found}")]
    WrongVariableCount { expected: usize, found: usize },

    #[error("denominator constant term is not a unit")]
    NonUnitConstantTerm,

    #[error("duplicate position {0:?}")]
    DuplicatePositions(Vec<usize>),

    #[error("orbit partition changed between shift bounds {0} and {1}")]
    AmbiguousAtBound(usize, usize),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("decode error: {0}")]
    Decode(String),
}
