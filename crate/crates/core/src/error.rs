use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime at most 2^31")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected Q or F<p>)")]
    InvalidField(String),
    #[error("{value} has a denominator divisible by {p}")]
    DenominatorNotInvertible { value: String, p: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("representations belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("presentation is not finite-dimensional within the path cap of {cap}")]
    PathCapExceeded { cap: usize },
    #[error("relation {relation} does not vanish on the maps from vertex {from} to vertex {to}")]
    RelationViolated {
        relation: usize,
        from: String,
        to: String,
    },
    #[error("vertex maps do not intertwine along arrow `{0}`")]
    NotAMorphism(String),
    #[error("not a subrepresentation: {0}")]
    NotASubrep(String),
    #[error("class has a negative coefficient")]
    NegativeClass,
    #[error("gamma has a negative coefficient")]
    NegativeGamma,
    #[error("gamma is degenerate on the support of alpha")]
    DegenerateGamma,
    #[error("class index sets differ: expected {expected} coefficients, got {actual}")]
    IndexMismatch { expected: usize, actual: usize },
    #[error("object has class {actual}, expected {expected}")]
    ClassMismatch { expected: String, actual: String },
    #[error("pairing matrix is not diagonal at ({0}, {1})")]
    NotDiagonal(usize, usize),
    #[error("gamma-length is zero, slope undefined")]
    ZeroGammaLength,
    #[error("quadratic norm of the filtration is zero")]
    ZeroNorm,
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("exhaustive search requires a prime field")]
    NotPrimeField,
    #[error("search needs {required} enumeration steps, budget is {budget}")]
    SearchBudgetExceeded { required: u128, budget: u128 },
    #[error("isomorphism test needs {required} candidates, budget is {budget}")]
    IsoTestBudgetExceeded { required: u128, budget: u128 },
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A syntax or semantic error in one of the text formats, with a 1-based
/// position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl Error {
    /// Whether the error stems from an exhausted enumeration budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SearchBudgetExceeded { .. } | Error::IsoTestBudgetExceeded { .. }
        )
    }
}
