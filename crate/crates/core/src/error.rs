use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order {0} is outside the supported range 2..=64")]
    InvalidOrder(usize),

    #[error("dimension mismatch: order {left} vs order {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range 1..={order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("generator set is empty")]
    EmptyGeneratorSet,

    #[error("generator set contains 0; generators must be positive")]
    ZeroGenerator,

    #[error("generator {0} appears more than once")]
    DuplicateGenerator(u64),

    #[error("generators have gcd {0}; the Frobenius number needs gcd 1")]
    NotCoprime(u64),

    #[error("representability table would need {0} entries; generators too large")]
    GeneratorsTooLarge(u128),

    #[error("digraph is not primitive")]
    NonPrimitive,

    #[error("cycle enumeration hit the cap of {0} cycles; cycle-length data is incomplete")]
    CycleCapHit(usize),

    #[error("{0} distinct cycle lengths exceed the supported maximum of 20")]
    TooManyCycleLengths(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("order {order} exceeds the cap of {cap} for this operation")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
