use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("direction curve is constant up to scaling; the surface is cylindrical")]
    CylindricalInput,
    #[error("solution set is positive dimensional: {0}")]
    PositiveDimensional(String),
    #[error("could not parametrize the highest form: {0}")]
    ParamHeuristicFailed(String),
    #[error("precision budget exhausted: {0}")]
    PrecisionBudget(String),
    #[error("resultant of identically zero input")]
    ZeroInput,
    #[error("matrix is not orthogonal: {0}")]
    NotAnIsometry(String),
    #[error("surface is not conical")]
    NotConical,
    #[error("irreducibility of the implicit equation must be asserted with --assume-irreducible")]
    IrreducibilityNotAsserted,
}

impl Error {
    /// Stable diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "PARSE_ERROR",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::CylindricalInput => "CYLINDRICAL_INPUT",
            Error::PositiveDimensional(_) => "POSITIVE_DIMENSIONAL",
            Error::ParamHeuristicFailed(_) => "PARAM_HEURISTIC_FAILED",
            Error::PrecisionBudget(_) => "PRECISION_BUDGET",
            Error::ZeroInput => "ZERO_INPUT",
            Error::NotAnIsometry(_) => "NOT_AN_ISOMETRY",
            Error::NotConical => "NOT_CONICAL",
            Error::IrreducibilityNotAsserted => "IRREDUCIBILITY_NOT_ASSERTED",
        }
    }
    /// Process exit code: 1 for unreadable input, 2 for failed preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidInput(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
