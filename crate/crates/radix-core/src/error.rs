use num_bigint::BigInt;

use crate::arith::FactoredInt;

/// Errors raised by the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("valuation undefined for 0")]
    ValuationUndefined,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("incomplete factorization: composite cofactor {remaining} survived the budget")]
    IncompleteFactorization {
        partial: FactoredInt,
        remaining: BigInt,
    },
    #[error("invalid factor hint: {0}")]
    InvalidHint(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("X^{n} - {a} is reducible: {reason}")]
    Reducible { n: usize, a: BigInt, reason: String },
    #[error("spec not reduced: {0}")]
    NotReduced(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rows do not span a full-rank lattice")]
    NotFullRank,
    #[error("not a sublattice")]
    NotSublattice,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
