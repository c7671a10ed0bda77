use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus {modulus} is reducible: divisible by {factor}")]
    ReducibleModulus { modulus: String, factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar does not belong to {0}")]
    MixedFields(String),
    #[error("operation requires a finite field, got {0}")]
    NotFinite(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("table is not associative: ({x}{y}){z} != {x}({y}{z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("element does not belong to monoid {0}")]
    MixedMonoids(String),
    #[error("monoid {0} is infinite")]
    InfiniteMonoid(String),
    #[error("monoid order {0} is out of range (1..=3)")]
    OrderOutOfRange(usize),

    #[error("algebra elements have different carriers")]
    CarrierMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("site set is not contained in the pattern domain; missing {missing:?}")]
    NotInDomain { missing: Vec<String> },
    #[error("pattern domain is insufficient; missing sites {missing:?}")]
    InsufficientDomain { missing: Vec<String> },
    #[error("symbol {symbol} is outside the alphabet of size {size}")]
    SymbolOutOfRange { symbol: u32, size: u32 },

    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("search space of {required} exceeds the budget of {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("cellular automaton is not injective")]
    NotInjective,

    #[error("black box is not linear: {0}")]
    NotLinear(String),
    #[error("evaluation paths disagree at site {0}")]
    PathMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("duplicate support element {0}")]
    DuplicateSupport(String),
    #[error("assignment is missing variables: expected {expected}, got {got}")]
    MissingVariables { expected: usize, got: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
