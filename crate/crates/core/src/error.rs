use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("odd-degree generator `{0}` raised to a power greater than one")]
    OddPower(String),
    #[error("malformed input: {0}")]
    Format(String),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("elements belong to different algebras")]
    MismatchedAlgebra,
    #[error("element is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("degree {degree} exceeds the degree cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error("a degree cap is required for algebras with even-degree generators")]
    MissingDegreeCap,
    #[error("differential of `{generator}` has wrong degree (expected {expected})")]
    WrongDifferentialDegree { generator: String, expected: u32 },
    #[error("d^2 != 0 on generator `{generator}`")]
    NotADifferential { generator: String },

    #[error("Lie algebra dimension {0} is not allowed here")]
    BadDimension(usize),
    #[error("bracket index out of range: {0}")]
    BadBracket(String),
    #[error("Jacobi identity fails on (e{i}, e{j}, e{k})")]
    JacobiFailure { i: usize, j: usize, k: usize },

    #[error("element is not closed")]
    NotClosed,
    #[error("symplectic form is degenerate")]
    DegenerateForm,
    #[error("not a symplectic-form candidate: {0}")]
    NotAForm(String),

    #[error("Chern class c{0} is not closed")]
    ChernNotClosed(usize),
    #[error("Chern class c{index} must have degree {expected}")]
    ChernWrongDegree { index: usize, expected: u32 },
    #[error("expected {expected} Chern classes, got {got}")]
    ChernCount { expected: usize, got: usize },
    #[error("bad codimension: {0}")]
    BadCodimension(String),
    #[error("Betti profile {0:?} does not satisfy Poincare duality")]
    InvalidBettiProfile(Vec<usize>),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
}

impl Error {
    /// Errors caused by malformed input text (as opposed to failed validation).
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownGenerator(_) | Error::OddPower(_) | Error::Format(_)
        )
    }

    /// Stable identifier used in structured error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::OddPower(_) => "OddPower",
            Error::Format(_) => "FormatError",
            Error::InvalidGenerators(_) => "InvalidGenerators",
            Error::MismatchedAlgebra => "MismatchedAlgebra",
            Error::NotHomogeneous { .. } => "NotHomogeneous",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::MissingDegreeCap => "MissingDegreeCap",
            Error::WrongDifferentialDegree { .. } => "WrongDifferentialDegree",
            Error::NotADifferential { .. } => "NotADifferential",
            Error::BadDimension(_) => "BadDimension",
            Error::BadBracket(_) => "BadBracket",
            Error::JacobiFailure { .. } => "JacobiFailure",
            Error::NotClosed => "NotClosed",
            Error::DegenerateForm => "DegenerateForm",
            Error::NotAForm(_) => "NotAForm",
            Error::ChernNotClosed(_) => "ChernNotClosed",
            Error::ChernWrongDegree { .. } => "ChernWrongDegree",
            Error::ChernCount { .. } => "ChernCount",
            Error::BadCodimension(_) => "BadCodimension",
            Error::InvalidBettiProfile(_) => "InvalidBettiProfile",
            Error::BadParameter(_) => "BadParameter",
        }
    }
}
