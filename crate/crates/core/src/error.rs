use thiserror::Error;

/// Errors raised by the algebra and representation routines.
///
/// Mathematical precondition failures carry enough context to name the
/// hypothesis that failed; the CLI maps them to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(
        "element is not in A: coefficient of X^{degree} is not polynomial in the Y-presentation"
    )]
    NotInA { degree: i64 },

    #[error("element is not in A+: {0}")]
    NotInAPlus(String),

    #[error("not a semi-level {mu} Casimir endomorphism: invariant factor {factor} does not divide {target}")]
    NotCasimir {
        mu: String,
        factor: String,
        target: String,
    },

    #[error("matrix is not unimodular: determinant {0}")]
    NotUnimodular(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("matrix does not intertwine: residual {0}")]
    NotIntertwining(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
