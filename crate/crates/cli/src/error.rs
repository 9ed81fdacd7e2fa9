use serde::Serialize;
use sl2_core::Error;

/// Schema violations exit with 2, failed mathematical hypotheses with 1.
#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Math { hypothesis: String, message: String },
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        CliError::Schema(message.into())
    }

    pub fn math(hypothesis: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Math {
            hypothesis: hypothesis.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Math { .. } => 1,
        }
    }

    pub fn body(&self) -> ErrorBody<'_> {
        match self {
            CliError::Schema(message) => ErrorBody {
                kind: "schema",
                hypothesis: None,
                message,
            },
            CliError::Math {
                hypothesis,
                message,
            } => ErrorBody {
                kind: "math",
                hypothesis: Some(hypothesis),
                message,
            },
        }
    }
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<&'a str>,
    pub message: &'a str,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let hypothesis = match &e {
            Error::Parse(_) => return CliError::Schema(e.to_string()),
            Error::DivisionByZero => "nonzero divisor",
            Error::ZeroGcd => "not both polynomials zero",
            Error::Dimension(_) => "compatible dimensions",
            Error::NotInA { .. } => "element lies in A",
            Error::NotInAPlus(_) => "alpha in A+ with nonzero end coefficients",
            Error::NotCasimir { .. } => "invariant factors of A1 divide pi_mu(z+1)",
            Error::NotUnimodular(_) => "unimodular matrix",
            Error::Hypothesis(_) => "precondition",
            Error::NotIntertwining(_) => "intertwining relation",
            Error::Internal(_) => "internal consistency",
        };
        CliError::math(hypothesis, e.to_string())
    }
}
