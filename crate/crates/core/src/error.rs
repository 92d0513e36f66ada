use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different base fields")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has no nonzero entry")]
    AllZeroMatrix,
    #[error("malformed coefficient {0:?}")]
    MalformedCoefficient(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("valuation is not uniform across the cluster {0}")]
    NonUniformCluster(String),
    #[error("divisor of degree {0} is not principal")]
    NotPrincipal(i64),
    #[error("normalization point lies in the support of the divisor")]
    NormalizationInSupport,
    #[error("normalization at a point of residue degree {0} is unsupported")]
    UnsupportedResidueDegree(usize),
    #[error("transition determinant is zero")]
    ZeroDeterminant,
    #[error("transition determinant is not a monomial")]
    NonMonomialDeterminant,
    #[error("the zero germ has no divisor")]
    ZeroGerm,
    #[error("germs are linearly dependent")]
    DependentGerms,
    #[error("avoided germs already span the generic fiber")]
    AvoidSpansAll,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("sub-sum over the minimal-order germs is zero")]
    DegenerateSum,
    #[error("germ orders at the point differ; apply repair_filter first")]
    UnequalOrders,
    #[error("no auxiliary rational point is available")]
    NoAuxiliaryPoint,
    #[error("basis does not satisfy the splitting criterion")]
    CriterionFailed,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
