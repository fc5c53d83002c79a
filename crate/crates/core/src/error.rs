use thiserror::Error;

/// Errors raised by the algebra, Betti and asymptotics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero ideal is not allowed: at least one nonzero generator is required")]
    ZeroIdeal,
    #[error("generator {index} is not homogeneous (term degrees {degrees:?})")]
    NotHomogeneous { index: usize, degrees: Vec<u32> },
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("index {index} out of range (valid range {lo}..={hi})")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("generator order is not degree ascending at position {position}")]
    OrderNotDegreeAscending { position: usize },
    #[error("order is not a permutation of the minimal generators")]
    InvalidOrder,
    #[error("degree cap {cap} is below the largest generator degree {max_degree}")]
    CapBelowGenerators { cap: u32, max_degree: u32 },
    #[error("Betti table may be incomplete: no bound certifies the degree cap {cap}; retry with a larger cap")]
    Truncated { cap: u32 },
    #[error("search cap {cap} exceeded without a verdict")]
    CapExceeded { cap: u32 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("empty Betti table has no regularity")]
    EmptyTable,
    #[error("{0} is not a prime above 2^30")]
    BadPrime(u64),
    #[error("coefficient {0} is not representable modulo the chosen prime")]
    NotRepresentable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
