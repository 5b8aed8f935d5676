use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a supported prime")]
    NotPrime(u64),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    MixedField(String),

    #[error("complexes have different N ({0} vs {1})")]
    MixedOrder(usize, usize),

    #[error("subspace is not contained in the ambient subspace")]
    Containment,

    #[error("amplitude {t} out of range [{lo}, {hi}]")]
    AmplitudeOutOfRange { t: usize, lo: usize, hi: usize },

    #[error("d^N is nonzero starting at degree(s) {0:?}")]
    NotAnNComplex(Vec<i64>),

    #[error("components do not commute with the differentials at degree(s) {0:?}")]
    NotAChainMap(Vec<i64>),

    #[error("g s g != g")]
    SplittingViolation,

    #[error("complex is not contractible")]
    NotContractible,

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("scalar not in field: {0}")]
    Field(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
