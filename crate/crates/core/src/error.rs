use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("variable index {index} out of range 1..={nvars}")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("form of degree {degree} is not closed")]
    NotClosed { degree: usize },

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },

    #[error("sections of orders {left} and {right} cannot be combined")]
    OrderMismatch { left: usize, right: usize },

    #[error("twisting needs a degree-3 form on order-1 sections (got form degree {form_degree}, order {order})")]
    TwistArityError { form_degree: usize, order: usize },

    #[error("form is not Hamiltonian for the given subbundle")]
    NotHamiltonian,

    #[error("identity of order {n} exceeds the arity bound {bound} of this structure")]
    ArityError { n: usize, bound: usize },

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("form is degenerate: the map into forms has rank {rank}, expected {expected}")]
    Degenerate { rank: usize, expected: usize },

    #[error("map is not invertible; determinant is {determinant}")]
    NonInvertible { determinant: String },

    #[error("generators are linearly dependent (rank {rank} < {count})")]
    DependentGenerators { rank: usize, count: usize },

    #[error("variable counts differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
