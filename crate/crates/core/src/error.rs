use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different rings (generator sets or truncation bounds differ).
    #[error("structural mismatch: {0}")]
    Structure(String),
    #[error("element is not invertible: constant term is zero")]
    NotInvertible,
    #[error("missing intersection number for monomial {0}")]
    MissingIntersection(String),
    #[error("Euler characteristic {0} is not an integer; intersection data is inconsistent")]
    NonIntegral(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("operator is not linear over the {0}")]
    NotInOperatorAlgebra(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
