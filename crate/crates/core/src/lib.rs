//! Exact combinatorics of block-size-restricted set partitions.
//!
//! Given a set `S` of admissible block sizes, this crate computes the number
//! families attached to `S`-restricted partitions — Stirling numbers of the
//! second kind, Bell numbers and polynomials, Fubini (ordered Bell) numbers,
//! lonesum and lonesum-decomposable matrix counts, and poly-Bernoulli
//! numbers — each through at least two independent routes (closed form,
//! generating function, recurrence), all in exact big-integer/rational
//! arithmetic.
//!
//! The [`oracle`] module provides brute-force enumeration ground truth used
//! to validate every closed form at small sizes.

pub mod arith;
pub mod blockset;
pub mod fubini;
pub mod lonesum;
pub mod oracle;
pub mod polybern;
pub mod riordan;
pub mod series;
pub mod stirling;

pub use blockset::BlockSizeSet;
pub use series::{TruncatedEgf, TruncatedEgf2};
