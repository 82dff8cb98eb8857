use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("binomial lower index must be nonnegative, got {0}")]
    NegativeBinomialIndex(i64),
    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("Pfaffian needs an even-sized matrix, got size {0}")]
    OddPfaffian(usize),
    #[error("augmentation row has length {got}, expected {expected}")]
    AugmentLength { expected: usize, got: usize },
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(i64),
    #[error("r must be nonnegative, got {0}")]
    NegativeRank(i64),
    #[error("vanishing sequence has {got} entries, expected r+1 = {expected}")]
    VanishingLength { expected: usize, got: usize },
    #[error("a_0 is negative ({0})")]
    NegativeVanishing(i64),
    #[error("vanishing sequence is not strictly increasing at a_{0}")]
    NotIncreasing(usize),
    #[error("a_r exceeds 2g-2 (a_r = {value}, 2g-2 = {bound})")]
    VanishingTooLarge { value: i64, bound: i64 },
    #[error("partition is not strict and positive: {0:?}")]
    NotStrict(Vec<u32>),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid JSON value: {0}")]
    Json(String),
}
