use thiserror::Error;

/// Errors raised by the bound computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("binomial({a}, {b}) is undefined: b exceeds a")]
    BinomialOutOfRange { a: u64, b: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree cap mismatch: {left} vs {right}")]
    CapMismatch { left: u32, right: u32 },

    #[error("degree {degree} exceeds the series cap {cap}")]
    DegreeAboveCap { degree: u32, cap: u32 },

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("Möbius parameter {0} outside the allowed range")]
    MobiusParameter(f64),

    #[error("constant term modulus {0} is not below 1")]
    ConstantTermOutsideDisc(f64),

    #[error("s = {0} must lie in [0, 1)")]
    SumOfSquaresOutOfRange(f64),

    #[error("value {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("tail of the root function does not contract at n = {n}, r = {r}")]
    TailNotContracting { n: u64, r: f64 },

    #[error("initial bracket [{lo}, {hi}] does not enclose a sign change")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("bisection stalled at width {width} above tolerance {tol}")]
    Unresolved { width: f64, tol: f64 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("grid too coarse: M*h/2 = {0} must be below 1")]
    GridTooCoarse(f64),

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("explicit upper bound needs n >= 189, got {0}")]
    BelowTheoryRange(u64),

    #[error("guard condition violated: {0}")]
    GuardViolated(String),

    #[error("certificate was issued for a different polynomial")]
    CertificateMismatch,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
