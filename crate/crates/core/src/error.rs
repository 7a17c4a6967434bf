use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle detected in order relations: {}", render_cycle(.cycle))]
    CycleDetected { cycle: Vec<usize> },

    #[error("element index {index} out of range for a poset on {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("posets are limited to {max} elements, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("lattice elements {lo} and {hi} do not satisfy lo <= hi")]
    NotComparable { lo: usize, hi: usize },

    #[error("lattice elements {a} and {b} are comparable, expected an incomparable pair")]
    NotIncomparable { a: usize, b: usize },

    #[error("vector {v:?} of degree {degree} is not in the Hibi semigroup")]
    NotInSemigroup { v: Vec<u32>, degree: u32 },

    #[error("complex stores faces up to dimension {cap}, homology up to H_{requested} needs dimension {needed}", needed = .requested + 1)]
    InsufficientCap { cap: usize, requested: usize },

    #[error("the two incomparable pairs are the same pair")]
    SamePair,

    #[error("pairs overlap: W has {size} elements, the four-element criterion needs 4")]
    DegenerateW { size: usize },

    #[error("level {level} outside 0..={max}")]
    BadLevel { level: usize, max: usize },

    #[error("epsilon {eps} outside 1..={max}")]
    BadEpsilon { eps: usize, max: usize },

    #[error("{p} is not a prime")]
    NotPrime { p: u64 },

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

fn render_cycle(cycle: &[usize]) -> String {
    cycle
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" < ")
}

pub type Result<T> = std::result::Result<T, Error>;
