use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position} (ring has {n_vars} variables)")]
    UnknownVariable {
        name: String,
        position: usize,
        n_vars: usize,
    },

    #[error("coefficient {value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: u64 },

    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("operands live over different fields")]
    MixedFields,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("the zero form does not define an algebra")]
    ZeroForm,

    #[error("not a regular sequence in degree {degree}: {detail}")]
    NotRegularSequence { degree: usize, detail: String },

    #[error("element must be nonzero")]
    ZeroElement,

    #[error("multiplication by x^{k} is injective on R^1 at the sampled x (strong Lefschetz evidence)")]
    SlpEvidence { k: usize },

    #[error("x^{k} vanished for {attempts} consecutive samples")]
    DegenerateAlgebra { k: usize, attempts: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operation requires a prime field")]
    RequiresPrimeField,

    #[error("malformed corpus: {0}")]
    Corpus(String),
}
