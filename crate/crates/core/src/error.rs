use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("strand count must be at least {min}, got {got}")]
    StrandCount { got: usize, min: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("token `{token}` has index out of range for {n} strands")]
    IndexOutOfRange { token: String, n: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid arrow {tail}->{head} on {n} strands")]
    InvalidArrow { tail: usize, head: usize, n: usize },

    #[error("invalid search budget: {0}")]
    InvalidBudget(&'static str),

    #[error("word contains a virtual letter `{0}`, outside the domain of the classical desingularization")]
    VirtualLetter(String),

    #[error("word has {got} singular letters, above the expansion cap {cap}")]
    TooManySingularities { got: usize, cap: usize },

    #[error("word contains singular letter `{0}`, which has no inverse")]
    NotInvertible(String),

    #[error("capped Euler characteristic {0} is odd")]
    OddEuler(i64),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
