use alloc::string::String;

/// Errors raised when building or transforming words.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("shifting index {index} by {shift} leaves the non-negative range")]
    NegativeIndex { index: u64, shift: i64 },
    #[error("index {index} exceeds the index cap {cap}")]
    IndexCap { index: u64, cap: u64 },
    #[error("{part} part is not sorted non-decreasingly")]
    Unsorted { part: &'static str },
    #[error("x{index} and x{index}^-1 both occur but x{next} does not", next = index + 1)]
    BadPair { index: u64 },
    #[error("cannot parse token `{token}`")]
    Parse { token: String },
}

/// Errors raised by subgroup sampling and the key exchange.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyError {
    #[error("parameter s = {0} is below 2")]
    SmallS(u64),
    #[error("target length M = {0} is invalid")]
    BadLength(usize),
    #[error("target length M = {0} must be even")]
    OddLength(usize),
    #[error("random walk stalled after {steps} steps at length {length}")]
    GenerationStalled { steps: usize, length: usize },
    #[error("private factor `{0}` is outside its subgroup")]
    InvalidKey(&'static str),
}
