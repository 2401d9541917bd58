use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("value overflows double precision (log magnitude {log_abs})")]
    Overflow { log_abs: f64 },

    #[error("weight symbol is not positive on the unit circle (min sampled value {min_value:e})")]
    NonPositiveWeight { min_value: f64 },

    #[error("symbol is not Hermitian-symmetric")]
    NotHermitian,

    #[error("T_{n} lost positive definiteness (lambda_min <= 0); reduce n")]
    LossOfDefiniteness { n: usize },

    #[error("Cholesky factorization failed at pivot {pivot} (value {value:e})")]
    CholeskyFailure { pivot: usize, value: f64 },

    #[error("only {usable} grid points survived the conditioning guard (need at least 3)")]
    InsufficientGrid { usable: usize },

    #[error("scaled sequence is not increasing at n = {n}")]
    NotMonotone { n: usize },

    #[error("characteristic exponents are not closed under conjugation")]
    ConjugatePairing,

    #[error("no sign change of the characteristic determinant on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root {root} lies outside the theorem bounds [{lower}, {upper}]")]
    OutOfBounds { root: f64, lower: f64, upper: f64 },

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("zero denominator in Rayleigh quotient")]
    ZeroDenominator,

    #[error("matrix is singular")]
    Singular,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
