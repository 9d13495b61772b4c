use thiserror::Error;

/// Every failure the toolkit reports. Variants map onto the error cases of
/// the individual modules; the CLI turns them into exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("catalog data error: {0}")]
    CatalogData(String),
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinimalPolynomial(String),
    #[error("unsuitable prime {p}: {reason}")]
    UnsuitablePrime { p: u64, reason: String },
    #[error("no inert prime found in [{start}, {cap}]")]
    NoInertPrime { start: u64, cap: u64 },
    #[error("prime {0} divides a denominator")]
    PrimeDividesDenominator(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported degree {n}; supported degrees are {supported:?}")]
    UnsupportedDegree { n: u32, supported: Vec<u32> },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("s = {s} exceeds the flip cap {cap}; raise it with --cap")]
    FlipCap { s: usize, cap: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{entry}` failed validation: {check}")]
    Validation { entry: String, check: String },
    #[error("inconsistent Betti data: {0}")]
    InconsistentBetti(String),
    #[error("LP duality violated: {0}")]
    DualityViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
