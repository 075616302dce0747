use thiserror::Error;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial contains point variable {0}; only abstract variables are allowed here")]
    PointVariable(String),

    #[error("polynomial contains abstract variable {0}; only point variables are allowed here")]
    AbstractVariable(String),

    #[error("variable {var} is outside the configured range (n = {n}, d = {d})")]
    VariableOutOfRange { var: String, n: u32, d: u32 },

    #[error("multi-index {index:?} has weight {weight} > n = {n}")]
    IndexTooLarge { index: Vec<u32>, weight: u32, n: u32 },

    #[error("index has {index} parts but {args} arguments were supplied")]
    ArityMismatch { index: usize, args: usize },

    #[error("argument tuple must be non-empty")]
    EmptyTuple,

    #[error("argument {0} of the tuple is the zero polynomial")]
    ZeroArgument(usize),

    #[error("power sums require a non-constant monomial")]
    ConstantMonomial,

    #[error("expected a monomial, got a polynomial with {0} terms")]
    NotAMonomial(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("polynomial is not invariant under the symmetric group on {0} points")]
    NotInvariant(u32),

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("basis vectors are linearly dependent in block {0}")]
    Dependent(String),

    #[error("multidegree {degree} exceeds the requested bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
