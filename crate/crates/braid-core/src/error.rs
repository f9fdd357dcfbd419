use thiserror::Error;

/// Errors produced by braid arithmetic, subgroup machinery, protocol runs
/// and the bounded solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("strand count {0} out of range (supported: 2..=255)")]
    StrandCount(usize),

    #[error("generator index {index} out of range for B_{n} (valid: 1..={})", n - 1)]
    IndexOutOfRange { index: i64, n: u16 },

    #[error("zero is not a valid signed generator entry")]
    ZeroEntry,

    #[error("cannot parse {0:?} as a signed generator entry")]
    BadWordText(String),

    #[error("alphabet must not be empty")]
    EmptyAlphabet,

    #[error("subgroup spec must have at least one generator")]
    EmptySubgroup,

    #[error("subgroup spec has {generators} generators but {labels} labels")]
    LabelMismatch { generators: usize, labels: usize },

    #[error("standard split requires n >= 4 and 2 <= l <= n-2, got n={n}, l={l}")]
    SplitBounds { n: u16, l: u16 },

    #[error("generator range [{lo}, {hi}] invalid for B_{n} (need 1 <= lo <= hi <= n-1)")]
    RangeBounds { lo: u16, hi: u16, n: u16 },

    #[error("subgroup word references generator {index} but the spec has only {count}")]
    SubgroupIndexOutOfRange { index: u16, count: usize },

    #[error("expected a tuple of {expected} words, got {got}")]
    TupleLengthMismatch { expected: usize, got: usize },

    #[error("contexts disagree: B_{0} vs B_{1}")]
    ContextMismatch(u16, u16),

    #[error("the two subgroups do not commute elementwise")]
    NonCommutingSubgroups,

    #[error("candidate c_{side} does not centralize the {side}-tuple")]
    NotCentralizing { side: char },

    #[error("candidate does not reproduce the transcript's conjugated tuple")]
    VerificationFailed,

    #[error("decomposition solution does not reproduce the observed message")]
    DecompositionInvariant,

    #[error("handle reduction exceeded its step budget of {budget}")]
    HandleBudgetExhausted { budget: u64 },

    #[error("search budget fields must all be positive")]
    BadBudget,

    #[error("malformed normal-form bytes: {0}")]
    BadBytes(String),
}

pub type Result<T> = std::result::Result<T, BraidError>;
