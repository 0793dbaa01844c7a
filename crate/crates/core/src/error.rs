use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the stable error identifiers printed by the CLI,
/// see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is a non-constant polynomial")]
    NonConstantDivisor,
    #[error("variable {0} has no binding")]
    UnboundVariable(String),
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),
    #[error("malformed scalar encoding: {0}")]
    ParseScalar(String),

    #[error("constant term of the divisor is not invertible")]
    NonUnitConstantTerm,
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),
    #[error("requested index {index} exceeds series order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("{0} requires a concrete rational lambda")]
    SymbolicLambdaUnsupported(&'static str),

    #[error("summand 1/(k+x)^r has a pole at k = {0}")]
    PoleAtSummand(usize),

    #[error("argument vector has {have} entries, {need} required")]
    ArgumentVectorTooShort { need: usize, have: usize },
    #[error("index ({n}, {k}) lies outside the triangle")]
    IndexOutOfTriangle { n: usize, k: usize },

    #[error("lambda = {lambda} outside the admissible range {range}")]
    LambdaOutOfRange { lambda: String, range: String },
    #[error("improper integral diverges: {0}")]
    NonConvergent(String),
    #[error("quadrature did not reach tolerance {tol:e} (error estimate {estimate:e})")]
    ToleranceNotMet { tol: f64, estimate: f64 },

    #[error("m = {0} must be odd")]
    EvenM(u64),
    #[error("denominator factor 1 - {j}*lambda vanishes")]
    SingularDenominator { j: usize },
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NonConstantDivisor => "NonConstantDivisor",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::ParseRational(_) => "ParseRational",
            Error::ParseScalar(_) => "ParseScalar",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::BadConstantTerm(_) => "BadConstantTerm",
            Error::OrderExceeded { .. } => "OrderExceeded",
            Error::SymbolicLambdaUnsupported(_) => "SymbolicLambdaUnsupported",
            Error::PoleAtSummand(_) => "PoleAtSummand",
            Error::ArgumentVectorTooShort { .. } => "ArgumentVectorTooShort",
            Error::IndexOutOfTriangle { .. } => "IndexOutOfTriangle",
            Error::LambdaOutOfRange { .. } => "LambdaOutOfRange",
            Error::NonConvergent(_) => "NonConvergent",
            Error::ToleranceNotMet { .. } => "ToleranceNotMet",
            Error::EvenM(_) => "EvenM",
            Error::SingularDenominator { .. } => "SingularDenominator",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
