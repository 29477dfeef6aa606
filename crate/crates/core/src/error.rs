use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension must be at least 1")]
    EmptyDimension,

    #[error("degenerate input: the {0} has no Newton polyhedron")]
    DegenerateIdeal(Degenerate),

    #[error("exponent vector entry {index} is zero, expected a positive exponent")]
    ZeroExponent { index: usize },

    #[error("ideal is not primary to the maximal ideal (no pure power of x{0})")]
    NotMPrimary(usize),

    #[error("entries {0} and {1} are not relatively prime")]
    NotCoprime(String, String),

    #[error("point is outside the Newton polyhedron, no dependence witness exists")]
    OutsideClosure,

    #[error("invalid two-exponent configuration: {0}")]
    InvalidSpec(String),

    #[error("{what} needs {needed}, over the limit of {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },

    #[error("lambda inequality violated at i = {i}: {lhs} < {rhs}")]
    LambdaViolation { i: u64, lhs: String, rhs: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degenerate {
    ZeroIdeal,
    UnitIdeal,
}

impl std::fmt::Display for Degenerate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degenerate::ZeroIdeal => f.write_str("zero ideal"),
            Degenerate::UnitIdeal => f.write_str("unit ideal"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
