use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("operands live in different base rings")]
    RingMismatch,
    #[error("operands live in different towers")]
    TowerMismatch,
    #[error("operands live in different modules")]
    ModuleMismatch,
    #[error("scalar-mul needs a constant polynomial operand")]
    NotConstant,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid base ring: {0}")]
    InvalidRing(String),
    #[error("target is not a cycle: d({target}) = {boundary}")]
    NotACycle { target: String, boundary: String },
    #[error("bidegree mismatch: {0}")]
    BidegreeMismatch(String),
    #[error("variable degrees must be weakly increasing: {name} has degree {degree} after degree {previous}")]
    DecreasingDegree { name: String, degree: u32, previous: u32 },
    #[error("divided power needs a homogeneous element of positive even degree, got {0}")]
    NotEvenPositive(String),
    #[error("u^(m) = u^m/m! divides by the characteristic {p} (m = {m})")]
    DivisionByCharacteristic { p: u64, m: u32 },
    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("semifree basis violation: {0}")]
    NotTriangular(String),
    #[error("differential does not square to zero: {0}")]
    NonZeroSquare(String),
    #[error("window {window} is too small: {reason}")]
    WindowTooSmall { window: String, reason: String },
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
}
