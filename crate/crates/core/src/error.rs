use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid word: letter {letter} is repeated")]
    RepeatedLetter { letter: u32 },

    #[error("invalid word: letter 0 is not a positive integer")]
    ZeroLetter,

    #[error("not a permutation of 1..{grade}: {image:?}")]
    NotAPermutation { image: Vec<u32>, grade: usize },

    #[error("words share letter {letter}; shuffle requires disjoint alphabets")]
    OverlappingLetters { letter: u32 },

    #[error("combination mixes grades {first} and {second}")]
    MixedGrades { first: usize, second: usize },

    #[error("order must be at least {min}, got {order}")]
    InvalidOrder { order: usize, min: usize },

    #[error("order {order} exceeds the generation cap {cap} ({terms} terms); raise the cap explicitly")]
    CapExceeded { order: usize, cap: usize, terms: String },

    #[error("element is not decomposable into right-nested commutators ending in {anchor}")]
    NotDecomposable { anchor: u32 },

    #[error("{what} must lie in {min}..={max}, got {value}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },

    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("{0}")]
    Evaluator(String),

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error("problem '{name}' is tagged skew-Hermitian but A({t})^† != -A({t})")]
    NotSkewHermitian { name: String, t: f64 },

    #[error("invalid series document: {0}")]
    InvalidDocument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
