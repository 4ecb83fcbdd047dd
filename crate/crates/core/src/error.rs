use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator factor {0} vanishes under the substitution")]
    DenominatorVanishes(String),
    #[error("symmetrization did not cancel denominators\n  kernel: {kernel}\n  numerator left: {remainder}\n  factors: {factors:?}")]
    NotPolynomial {
        kernel: String,
        remainder: String,
        factors: Vec<String>,
    },
    #[error("polynomial is not symmetric as claimed: {0}")]
    NotSymmetric(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ill-formed class: {0}")]
    IllFormedClass(String),
    #[error("Euler class of a virtual class with a zero weight in the denominator")]
    ZeroWeightInDenominator,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported quiver for built-in fixed points: {0}; supply a restriction table (JSON: {{\"points\": [{{\"id\", \"assign\", \"component\"}}], \"order\": [[low, high]]}})")]
    Unsupported(String),
    #[error("singular matrix")]
    Singular,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
