use thiserror::Error;

use crate::rational::RationalSyntax;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} lies outside [0,1]")]
    OutOfUnitInterval(String),

    #[error("bad rational `{token}`: {reason}")]
    Rational {
        token: String,
        reason: RationalSyntax,
    },

    #[error("breakpoints must start at x = 0 and end at x = 1 ({0})")]
    DomainNotCovered(String),

    #[error("breakpoint abscissae not strictly increasing at index {index}")]
    NonMonotone { index: usize },

    #[error("breakpoint ordinate {0} lies outside [0,1]")]
    OrdinateOutOfRange(String),

    #[error("breakpoint budget exceeded: {count} breakpoints > budget {budget}")]
    BudgetExceeded { count: usize, budget: usize },

    #[error("empty input set")]
    EmptyInput,

    #[error("slope bound must be positive, got {0}")]
    NonPositiveBound(String),

    #[error("inconsistent thread at index {index}: h(x_{next}) = {image} but x_{index} = {coord}", next = .index + 1)]
    InconsistentThread {
        index: usize,
        image: String,
        coord: String,
    },

    #[error("threads have different depths ({0} vs {1})")]
    DepthMismatch(usize, usize),

    #[error("threads have different bonding maps")]
    BondingMismatch,

    #[error("maps do not commute: defect {defect} at x = {witness}")]
    NotCommuting { defect: String, witness: String },

    #[error("thread depth {depth} too small (need at least {required})")]
    DepthTooSmall { depth: usize, required: usize },

    #[error("bad truncation depth {requested} for a thread of depth {depth}")]
    BadDepth { requested: usize, depth: usize },

    #[error("a map has an empty fixed-point set")]
    EmptyFixedSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable numeric code for tooling.
    pub fn code(&self) -> u16 {
        match self {
            Error::OutOfUnitInterval(_) => 10,
            Error::Rational { .. } => 11,
            Error::DomainNotCovered(_) => 20,
            Error::NonMonotone { .. } => 21,
            Error::OrdinateOutOfRange(_) => 22,
            Error::BudgetExceeded { .. } => 30,
            Error::EmptyInput => 31,
            Error::NonPositiveBound(_) => 32,
            Error::InconsistentThread { .. } => 40,
            Error::DepthMismatch(..) => 41,
            Error::BondingMismatch => 42,
            Error::NotCommuting { .. } => 43,
            Error::DepthTooSmall { .. } => 44,
            Error::BadDepth { .. } => 45,
            Error::EmptyFixedSet => 46,
            Error::InvalidArgument(_) => 50,
        }
    }
}
