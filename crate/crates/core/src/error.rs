use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("coefficient {0} is not in the declared ring")]
    RingMismatch(String),
    #[error("symmetric part is degenerate; no Wick bivector exists")]
    NoWickBivector,
    #[error("expected a pure bivector")]
    NotBivector,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("no hyperbolic split: {0}")]
    NoHyperbolicSplit(String),
    #[error("incomparable forms: {0}")]
    Incomparable(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("parse error at position {position} in {input:?}: {reason}")]
    Parse {
        input: String,
        position: usize,
        reason: String,
    },
    #[error("{0}")]
    Invalid(String),
}
