use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("characteristic 2 is not supported for sl_2 / SL_2^1 constructions")]
    CharacteristicTwo,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("guard exceeded for {what}: needs {needed}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("monomial ideal has infinite colength")]
    InfiniteColength,

    #[error("truncation too shallow: no pure power of x_{axis} among leading monomials")]
    TruncationTooShallow { axis: usize },

    #[error("leading monomial of the zero element")]
    ZeroElement,

    #[error("inadmissible sequence: {0}")]
    InadmissibleSequence(String),

    #[error("inconsistent parameter profile: {0}")]
    ProfileInconsistent(String),

    #[error("ideal is not contained in the maximal ideal")]
    NotInMaximalIdeal,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
