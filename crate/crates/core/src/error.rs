use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0:?} is not dominant (entries must be non-increasing)")]
    NotDominant(Vec<i64>),

    #[error("expected a weight of length {expected}, got length {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("invalid grassmannian G({k},{n}): need 1 <= k < n")]
    InvalidGrassmannian { k: usize, n: usize },

    #[error("classes live on different grassmannians: G({0},{1}) vs G({2},{3})")]
    GrassmannianMismatch(usize, usize, usize, usize),

    #[error("partition {0:?} does not fit in the {1}x{2} box")]
    OutsideBox(Vec<u32>, usize, usize),

    #[error("character is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("operation requires a genuine character, found multiplicity {0}")]
    VirtualCharacter(i64),

    #[error("non-integral result {0}: the Chern/Todd reduction is inconsistent")]
    NonIntegral(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("expected a class of codimension {expected}, found {actual}")]
    WrongCodimension { expected: usize, actual: usize },

    #[error("Noether formula: {0} is not divisible by 12")]
    NoetherNotIntegral(i128),

    #[error("inconsistent constraints: {0}")]
    Infeasible(String),

    #[error("undetermined result: {0}")]
    Ambiguous(String),

    #[error("search space too large: {0}")]
    SearchLimit(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
