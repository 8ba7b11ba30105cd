//! Eventually periodic sequences `(s_n)` and the series
//! `1 / (1 - sum s_n x^n)`: exact evaluation of `sum s_n x^-n`, certified
//! growth-rate brackets, the equivalent integer polynomial, coefficient
//! counts and the proximity bound.

mod counts;
mod poly;
mod rate;
mod seq;

use thiserror::Error;

pub use counts::{class_counts, CountSequence};
pub use poly::{seq_to_polynomial, Polynomial};
pub use rate::{compare_with_one, default_tol, f_eval, growth_rate, proximity_bound, GrowthRate};
pub use seq::SeqSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("sequence text: {0}")]
    Parse(String),
    #[error("the repeating tail must have at least one entry")]
    EmptyTail,
    #[error("entry {0} is zero; terms must be positive")]
    ZeroEntry(usize),
    #[error("the series only converges for x > 1")]
    NotAboveOne,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
}
