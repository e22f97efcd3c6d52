use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0:?}")]
    InvalidPermutation(alloc::vec::Vec<usize>),
    #[error("embedding position r = {r} out of range for n = {n}")]
    EmbedOutOfRange { r: usize, n: usize },
    #[error("matrix is not symplectic (residual {residual:e})")]
    NotSymplectic { residual: f64 },
    #[error("matrix is not upper triangular with positive real diagonal (residual {residual:e})")]
    NotInRu { residual: f64 },
    #[error("chart is undefined at this point")]
    ChartBoundary,
    #[error("n = {0} is not supported here")]
    UnsupportedSize(usize),
    #[error("word letter {letter} out of range 1..{n}")]
    WordLetter { letter: usize, n: usize },
    #[error("word of length {word} is not reduced (permutation length {length})")]
    NonReducedWord { word: usize, length: usize },
    #[error("{params} parameters supplied for a word of length {word}")]
    ParamCount { word: usize, params: usize },
    #[error("multivector grades do not match: {0} and {1}")]
    GradeMismatch(usize, usize),
    #[error("invalid range: {0}")]
    BadRange(&'static str),
}
