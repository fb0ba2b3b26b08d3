use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input arity {0}: k must be at least 2")]
    InvalidArity(usize),
    #[error("digit {digit} out of range for arity {k}")]
    InvalidDigit { digit: usize, k: usize },
    #[error("automaton is not leading-zero invariant: delta(q0, 0) != q0")]
    NotNormalized,
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid length {0}: {1}")]
    InvalidLength(usize, &'static str),
    #[error("invalid pattern (ell={ell}, a={a}): {reason}")]
    InvalidPattern {
        ell: u32,
        a: u64,
        reason: &'static str,
    },
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("length {n} exceeds the prime {p}")]
    LengthExceedsPrime { n: usize, p: u64 },
    #[error("unknown sequence descriptor `{0}`")]
    UnknownSequence(String),
    #[error("unknown automaton `{0}`")]
    UnknownAutomaton(String),
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("witness out of range for sequence of length {0}")]
    WitnessOutOfRange(usize),
    #[error("oracle budget exceeded: {0}")]
    OracleCapExceeded(String),
    #[error("polynomial does not have the required form: {0}")]
    FormMismatch(String),
    #[error("functional equation fails: first nonzero residue coefficient at index {0}")]
    FunctionalEquation(usize),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("proof identity violated: {0}")]
    IdentityViolated(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
