use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the configured bound {bound}")]
    OrderTooLarge { p: u64, e: u32, bound: u64 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element does not belong to the expected field")]
    WrongField,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator matrix is zero")]
    ZeroMatrix,
    #[error("the dual of a full-space code is the zero code")]
    DegenerateDual,
    #[error("enumeration budget {budget} exceeded (primal side {primal} codewords, dual side {dual} codewords)")]
    BudgetExceeded {
        primal: BigUint,
        dual: BigUint,
        budget: u64,
    },
    #[error("subset budget {budget} exceeded ({needed} subsets required)")]
    SubsetBudgetExceeded { needed: BigUint, budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent weight distribution: {0}")]
    InconsistentDistribution(String),
    #[error("no codeword of weight {0}")]
    EmptyDesign(usize),
    #[error("length {n} exceeds the supported bound {max}")]
    LengthTooLarge { n: usize, max: usize },
    #[error("exact evaluation produced a non-integer: {0}")]
    NonIntegral(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::SubsetBudgetExceeded { .. } | Error::OrderTooLarge { .. }
        )
    }
}
