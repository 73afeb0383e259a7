use num_bigint::BigUint;

/// Errors shared across the crate.
///
/// Operations that *decide* something negative (a set is not a basis, a run
/// does not exist, a gap was found) report that through their result types,
/// not through this enum; `Error` is reserved for inputs that violate a
/// contract and for resource exhaustion.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("automata operate over different bases ({left} vs {right})")]
    BaseMismatch { left: u32, right: u32 },

    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("base must be at least 2, got {0}")]
    BadBase(u32),

    #[error("the set has no nonzero member")]
    NoNonzeroMember,

    #[error("the set has gcd {gcd}, not 1")]
    GcdNotOne { gcd: BigUint },

    #[error("growth analysis: {0}")]
    WrongGrowth(&'static str),

    #[error("invalid sum specification: {0}")]
    InvalidSumSpec(String),

    #[error("subset construction exceeded the state limit of {limit} (set AUTOBASIS_MAX_STATES to raise it)")]
    StateLimit { limit: usize },

    #[error("no order up to {max_order} decided the basis question; the decision procedure is guaranteed to terminate by order {bound_n} with threshold at most {bound_m}")]
    Inconclusive {
        max_order: u32,
        bound_n: BigUint,
        bound_m: BigUint,
    },

    #[error("invalid parameter: {0}")]
    Precondition(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),
}

/// Syntax or validation failure while reading the textual automaton format.
///
/// `line` is 1-based; 0 means the problem concerns the file as a whole
/// (for example a missing header directive).
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
