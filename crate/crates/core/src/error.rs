//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation parse error: {0}")]
    Parse(String),

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("order cap exceeded: closure passed {cap} elements")]
    OrderCapExceeded { cap: usize },

    #[error("subgroup enumeration cap exceeded: group of order {order} over cap {cap}")]
    SubgroupCapExceeded { order: usize, cap: usize },

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("not a subgroup of the ambient group")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a factorisation: |A||B| = {product}, |G||A\u{2229}B| = {required}")]
    NotAFactorisation { product: usize, required: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group of order {0} is not a p-group for p = {1}")]
    NotAPGroup(usize, u64),

    #[error("operation requires a nontrivial group")]
    TrivialGroup,

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
