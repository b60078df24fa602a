use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("degree mismatch: expected S_{expected}, found S_{found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{p} is not invertible in a field of characteristic {characteristic} (the p = 3 generator needs 2/3, the p = 2 generator needs 1/2)")]
    NotInvertible { p: u64, characteristic: u64 },

    #[error("good ideal axiom failed: {0}")]
    GoodIdealAxiom(String),

    #[error("window exhausted: needed degree {needed}, valid only through {available}")]
    WindowExhausted { needed: usize, available: usize },

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
