//! Exact computation engine for finite permutation groups.
//!
//! The crate enumerates small groups explicitly, computes their irreducible
//! character tables with exact cyclotomic arithmetic, decides the
//! core-factorisation property of a product `G = AB`, and checks a registry
//! of structural statements about vanishing elements across a catalog of
//! groups. There is no floating point anywhere: every predicate in the
//! character pipeline is decided by exact arithmetic.

pub mod arith;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod factcheck;
pub mod perm;
pub mod structure;
pub mod testkit;
pub mod theorems;

pub use error::{Error, Result};
pub use perm::{Group, Perm};
