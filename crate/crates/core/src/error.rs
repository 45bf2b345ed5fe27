use thiserror::Error;

/// Everything that can go wrong when asking for a count.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("jump count {0} is odd; cyclic jump counts are always even")]
    InvalidTau(usize),

    #[error("family ({zeros} zeros, {ones} ones) is degenerate: only the constant sequence exists")]
    DegenerateFamily { zeros: usize, ones: usize },

    #[error("sequence family must contain at least one digit")]
    EmptyFamily,

    #[error("pattern '{0}' has no closed form; use the oracle instead")]
    UnsupportedPattern(String),

    #[error("pattern '{pattern}' must be shorter than the sequence length {len}")]
    PatternTooLong { pattern: String, len: usize },

    #[error("invalid pattern '{0}': expected a nonempty string of 0 and 1")]
    InvalidPattern(String),

    #[error("oracle cap exceeded: N = {len} is above the cap of {cap}")]
    CapExceeded { len: usize, cap: usize },

    #[error("displacement {k} is not reachable in {steps} steps")]
    InvalidDisplacement { steps: usize, k: i64 },

    #[error("sequence is constant and has no type")]
    ConstantSequence,

    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = CountError> = std::result::Result<T, E>;
