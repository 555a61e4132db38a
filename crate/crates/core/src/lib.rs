//! Exact generating functions for consecutive pattern avoidance.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: permutations, reduction, the `des`/`inv`/`coinv`/`LRmin`
//!   statistics, consecutive matches and lexicographic enumeration of `S_n`.
//! - [`qpoly`]: sparse multivariate polynomials over `q, p, z, x, y` with
//!   big-integer coefficients, and the `p,q`-analogues of integers,
//!   factorials and binomials.
//! - [`overlap`]: minimal-overlap predicates and maximum packings.
//! - [`qseries`]: truncated exponential-type series, brute-force coefficient
//!   tables and reciprocity.
//! - [`recursions`]: recursion engines for the `IU` and `U` polynomials.
//! - [`tabloids`]: filled labelled brick tabloids and the sign-reversing
//!   involution on them.
//! - [`equivalence`]: statistic-refined c-Wilf classification, the
//!   match-replacing bijection and the `2^n` families.
//! - [`verify`]: the end-to-end verification report used by `verify-all`.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod budget;
pub mod equivalence;
mod error;
pub mod overlap;
pub mod perm;
pub mod qpoly;
pub mod qseries;
pub mod recursions;
pub mod tabloids;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use perm::{PatternSet, Permutation, StatBundle};
pub use qpoly::{MultiPoly, RatPoly, Var};
pub use qseries::QSeries;
