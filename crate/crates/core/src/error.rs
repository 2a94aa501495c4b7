use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported maximum of 2^20 elements")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    BadModulus { expected: u32, p: u32 },
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("element {value} is out of range for a field of order {q}")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("wrong number of operands for {0}")]
    Arity(&'static str),
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("arguments must be distinct")]
    EqualArguments,
    #[error("a point set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("monomial {exps:?} has total degree {got}, expected {expected}")]
    Inhomogeneous { exps: [u32; 3], got: u32, expected: u32 },
    #[error("curve has no nonzero terms")]
    EmptyCurve,
    #[error("degree must be at least 1")]
    DegreeTooSmall,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("point is not on the line")]
    PointNotOnLine,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point is a singular point of the curve")]
    SingularPoint,
    #[error("budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("invalid search task: {0}")]
    InvalidTask(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
