use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: size {got} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("state budget of {budget} entries exceeded")]
    StateBudget { budget: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(i64, i64),

    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: u64 },

    #[error("moduli are not pairwise coprime")]
    InconsistentModuli,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("serialization budget exceeded: the framework has n = {n} elements (budget {budget})")]
    SerializationBudget { n: u128, budget: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
