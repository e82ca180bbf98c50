use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {0} is too small (need d >= 3)")]
    ArityTooSmall(usize),

    #[error("unknown generator `{name}` for arity {d}")]
    UnknownGenerator { name: String, d: usize },

    #[error("malformed token at byte {offset}: {reason}")]
    MalformedToken { offset: usize, reason: String },

    #[error("word length {0} exceeds the length cap")]
    WordTooLong(u64),

    #[error("alphabet mismatch: arity {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("operation needs a nonempty word")]
    EmptyWord,

    #[error("vertex entry {entry} is outside 1..={d}")]
    BadVertex { entry: usize, d: usize },

    #[error("level {level} has {d}^{level} vertices, above the cap of {cap}")]
    LevelTooLarge { level: usize, d: usize, cap: usize },

    #[error("invalid permutation: {0}")]
    BadPermutation(String),

    #[error("recursion table, line {line}: {reason}")]
    TableFormat { line: usize, reason: String },

    #[error("catalog entry `{name}` is not defined for d = {d}")]
    NameUnavailable { name: String, d: usize },

    #[error("strategy {strategy} cannot be used here: {reason}")]
    StrategyMismatch { strategy: &'static str, reason: &'static str },

    #[error("node budget of {0} exceeded")]
    NodeBudgetExceeded(u64),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("check needs d = {expected}, got d = {actual}")]
    ArityMismatch { expected: usize, actual: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
