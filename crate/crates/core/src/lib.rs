//! Growth rates of sum-closed permutation classes.
//!
//! A sum-closed class with `s_n` sum-indecomposable members of each length
//! `n` has generating function `1 / (1 - sum s_n x^n)`, and its growth rate is
//! the unique `x > 1` with `sum s_n x^-n = 1`. This crate computes those
//! rates with exact rational brackets, builds antichains of
//! sum-indecomposable permutations that give the freedom to choose `(s_n)`,
//! and realizes target rates greedily.

pub mod numeric;
pub mod perm;
pub mod series;
pub mod antichain;
pub mod realizer;
pub mod problems;
pub mod verify;
