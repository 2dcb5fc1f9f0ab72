use thiserror::Error;

/// Errors raised by the algebraic routines and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a monomial in tau")]
    NotMonomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map germ is not invertible: singular linear part")]
    NotInvertible,
    #[error("linear part is not diagonal: {0}")]
    NotDiagonal(String),
    #[error("degenerate germ: {0}")]
    Degenerate(String),
    #[error("condition (*) does not single out the requested axis: {0}")]
    NotStarGerm(String),
    #[error("transverse eigenvalue ratio {0} is not a negative integer")]
    NonIntegerRatio(String),
    #[error("unsupported coupling: {0}")]
    UnsupportedCoupling(String),
    #[error("normalized field is not polynomial in the axis variable")]
    NotPolynomialInAxisVariable,
    #[error("vector field has terms of order < 2")]
    OrderTooLow,
    #[error("map germ is not tangent to the identity")]
    NotTangentToIdentity,
    #[error("chart does not keep the origin fixed: {0}")]
    ChartNotInvariant(String),
    #[error("quotient denominator is not a unit in the chart")]
    NotUnitDenominator,
    #[error("vector field is not linear")]
    NotLinear,
    #[error("tau-dependent value where a Gaussian rational is required")]
    TauDependent,
    #[error("syntax error at {line}:{column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotMonomial => "NotMonomial",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInvertible => "NotInvertible",
            Error::NotDiagonal(_) => "NotDiagonal",
            Error::Degenerate(_) => "Degenerate",
            Error::NotStarGerm(_) => "NotStarGerm",
            Error::NonIntegerRatio(_) => "NonIntegerRatio",
            Error::UnsupportedCoupling(_) => "UnsupportedCoupling",
            Error::NotPolynomialInAxisVariable => "NotPolynomialInAxisVariable",
            Error::OrderTooLow => "OrderTooLow",
            Error::NotTangentToIdentity => "NotTangentToIdentity",
            Error::ChartNotInvariant(_) => "ChartNotInvariant",
            Error::NotUnitDenominator => "NotUnitDenominator",
            Error::NotLinear => "NotLinear",
            Error::TauDependent => "TauDependent",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
