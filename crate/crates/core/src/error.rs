use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no square class")]
    ZeroElement,
    #[error("characteristic 2 is not supported (q = {0})")]
    EvenCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("index {j} out of range for an algebra of degree {degree}")]
    IndexOutOfRange { j: usize, degree: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("class {0} is not perpendicular to the vanishing cycle")]
    NotPerpendicular(String),
    #[error("missing table entry for class {class} with sigma {sigma}")]
    MissingEntry { class: String, sigma: String },
    #[error("inconsistent profile: {0}")]
    ProfileInconsistent(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("invalid square class {class} for field {field}")]
    InvalidClass { class: String, field: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
