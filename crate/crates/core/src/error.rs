use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZsrError {
    #[error("size unsupported: {0}")]
    SizeUnsupported(String),
    #[error("vertex count {n} is not 1 mod 3")]
    ResidueMismatch { n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("restrictive colouring fits no known class: {0}")]
    ClassificationFailure(String),
    #[error("enumeration budget exceeded: estimated {estimate:.3e} classes, budget {budget:.3e}")]
    BudgetExceeded { estimate: f64, budget: f64 },
    #[error("search timed out after {seconds:.1}s")]
    Timeout { seconds: f64 },
    #[error("modulus {k} does not divide edge count {edges}")]
    DivisibilityViolated { k: u8, edges: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for ZsrError {
    fn from(e: std::io::Error) -> Self {
        ZsrError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, ZsrError>;
