//! Realizing growth rates: the greedy choice of `(s_n)` between two
//! sequences, rates of choice sequences for perfect-set sampling, and rate
//! addition under horizontal juxtaposition.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{floor_to_int, serialize_rational};
use crate::series::{compare_with_one, default_tol, f_eval, growth_rate, GrowthRate, SeqSpec, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("lower sequence is not dominated by the upper sequence (term {0})")]
    NotDominated(usize),
    #[error("sequences differ at term {n}, before the first free index {k}")]
    DiffersBeforeK { n: usize, k: usize },
    #[error("gap t_{n} - r_{n} = {gap} is below b - 1 = {needed}")]
    GapTooSmall { n: usize, gap: u64, needed: u64 },
    #[error("b must be positive")]
    ZeroB,
    #[error("target {gamma} is outside the realizable interval [{lo}, {hi}]")]
    GammaOutside { gamma: String, lo: String, hi: String },
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("{len} bits but only {available} positions where the sequences differ")]
    TooManyBits { len: usize, available: usize },
    #[error("greedy step {0} has no admissible value")]
    Infeasible(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// First index where `r` and `t` differ, if any.
pub fn first_difference(r: &SeqSpec, t: &SeqSpec) -> Option<usize> {
    let (m, d) = r.common_window(t);
    (1..=m + d).find(|&n| r.term(n) != t.term(n))
}

/// Checks `r ≼ t`, `t_n = r_n` for `n < k` and `t_n - r_n >= b - 1` for
/// `n >= k`.
fn check_hypotheses(r: &SeqSpec, t: &SeqSpec, k: usize, b: u64) -> Result<(), RealizeError> {
    if b == 0 {
        return Err(RealizeError::ZeroB);
    }
    let (m, d) = r.common_window(t);
    for n in 1..=m.max(k) + d {
        let (rn, tn) = (r.term(n), t.term(n));
        if rn > tn {
            return Err(RealizeError::NotDominated(n));
        }
        if n < k && rn != tn {
            return Err(RealizeError::DiffersBeforeK { n, k });
        }
        if n >= k && tn - rn < b - 1 {
            return Err(RealizeError::GapTooSmall { n, gap: tn - rn, needed: b - 1 });
        }
    }
    Ok(())
}

/// Lower and upper ends of the interval of rates realizable between `r` and
/// `t` with gap parameter `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalEndpoints {
    pub lower: GrowthRate,
    /// `gr(t)`, or exactly `b` when `b < gr(t)`.
    pub upper: GrowthRate,
    pub capped_at_b: bool,
}

/// The interval `[gr(r), min(b, gr(t))]`. The free index is taken to be the
/// first index where `r` and `t` differ.
pub fn interval_endpoints(
    r: &SeqSpec,
    t: &SeqSpec,
    b: u64,
    tol: &BigRational,
) -> Result<IntervalEndpoints, RealizeError> {
    let k = first_difference(r, t).unwrap_or(1);
    check_hypotheses(r, t, k, b)?;
    let lower = growth_rate(r, tol)?;
    let upper = growth_rate(t, tol)?;
    let b_rate = GrowthRate::exact(b as i64);
    let capped = b_rate.hi < upper.lo;
    Ok(IntervalEndpoints {
        lower,
        upper: if capped { b_rate } else { upper },
        capped_at_b: capped,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationProblem {
    r: SeqSpec,
    t: SeqSpec,
    k: usize,
    b: u64,
    gamma: BigRational,
}

impl RealizationProblem {
    pub fn new(r: SeqSpec, t: SeqSpec, k: usize, b: u64, gamma: BigRational) -> Result<Self, RealizeError> {
        check_hypotheses(&r, &t, k, b)?;
        Ok(RealizationProblem { r, t, k, b, gamma })
    }

    /// Like [`RealizationProblem::new`] with `k` set to the first index where
    /// `r` and `t` differ.
    pub fn inferred(r: SeqSpec, t: SeqSpec, b: u64, gamma: BigRational) -> Result<Self, RealizeError> {
        let k = first_difference(&r, &t).unwrap_or(1);
        RealizationProblem::new(r, t, k, b, gamma)
    }

    pub fn r(&self) -> &SeqSpec {
        &self.r
    }

    pub fn t(&self) -> &SeqSpec {
        &self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    pub fn with_gamma(&self, gamma: BigRational) -> Self {
        RealizationProblem { gamma, ..self.clone() }
    }

    /// Checks `gr(r).lo - tol <= γ <= min(b, gr(t).hi + tol)` on brackets
    /// of width `tol`.
    pub fn check_admissible(&self, tol: &BigRational) -> Result<(), RealizeError> {
        let ends = interval_endpoints(&self.r, &self.t, self.b, tol)?;
        let lo = &ends.lower.lo - tol;
        let hi = if ends.capped_at_b {
            ends.upper.hi.clone()
        } else {
            &ends.upper.hi + tol
        };
        if self.gamma < lo || self.gamma > hi {
            return Err(RealizeError::GammaOutside {
                gamma: self.gamma.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(())
    }
}

/// The first `depth` greedy choices with rate brackets for both completions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationCertificate {
    #[serde(serialize_with = "serialize_rational")]
    pub gamma: BigRational,
    pub depth: usize,
    pub chosen: Vec<u64>,
    /// Rate of `s_1..s_N` followed by `r_{N+1}, r_{N+2}, ...`.
    pub lower: GrowthRate,
    /// Rate of `s_1..s_N` followed by `t_{N+1}, t_{N+2}, ...`.
    pub upper: GrowthRate,
}

impl RealizationCertificate {
    /// `upper.hi - lower.lo`.
    pub fn width(&self) -> BigRational {
        &self.upper.hi - &self.lower.lo
    }

    /// Whether `lower.lo <= γ <= upper.hi`.
    pub fn brackets_gamma(&self) -> bool {
        self.lower.lo <= self.gamma && self.gamma <= self.upper.hi
    }

    /// Re-checks every step against `problem` with exact arithmetic: bounds
    /// `r_n <= s_n <= t_n`, that the chosen head with `r`-tail has rate at
    /// most `γ`, and that raising `s_n` by one (when `s_n < t_n`) pushes the
    /// rate above `γ`. Returns the 1-based steps that fail.
    pub fn greedy_violations(&self, problem: &RealizationProblem) -> Vec<usize> {
        let r = &problem.r;
        let t = &problem.t;
        let gamma = &self.gamma;
        (1..=self.chosen.len())
            .filter(|&n| {
                let s = self.chosen[n - 1];
                if s < r.term(n) || s > t.term(n) {
                    return true;
                }
                let head = &self.chosen[..n];
                let at = r.with_head(head).expect("positive terms");
                // Steps clamped to r_n (target within tol below gr(r)) may sit
                // above 1; only a strict excess over r_n must stay within.
                if s > r.term(n) && compare_with_one(&at, gamma) == Ordering::Greater {
                    return true;
                }
                if s < t.term(n) {
                    let mut raised = head.to_vec();
                    raised[n - 1] += 1;
                    let up = r.with_head(&raised).expect("positive terms");
                    if compare_with_one(&up, gamma) != Ordering::Greater {
                        return true;
                    }
                }
                false
            })
            .collect()
    }
}

/// Runs the greedy choice to `depth` terms with brackets of width
/// [`default_tol`].
pub fn realize(problem: &RealizationProblem, depth: usize) -> Result<RealizationCertificate, RealizeError> {
    realize_with_tol(problem, depth, &default_tol())
}

/// For `n = 1..=depth`, `s_n` is the largest value in `[r_n, t_n]` such that
/// `s_1..s_n` followed by `r_{n+1}, r_{n+2}, ...` has `sum s_n γ^-n <= 1`,
/// i.e. rate at most `γ`.
///
/// The left-hand side is affine in `s_n` with slope `γ^-n`, so each step is a
/// single exact floor division.
pub fn realize_with_tol(
    problem: &RealizationProblem,
    depth: usize,
    tol: &BigRational,
) -> Result<RealizationCertificate, RealizeError> {
    if depth == 0 {
        return Err(RealizeError::ZeroDepth);
    }
    problem.check_admissible(tol)?;
    let gamma = &problem.gamma;
    let inv_gamma = gamma.recip();
    let mut weight = BigRational::one();
    let mut chosen: Vec<u64> = Vec::with_capacity(depth);
    for n in 1..=depth {
        weight *= &inv_gamma;
        let (rn, tn) = (problem.r.term(n), problem.t.term(n));
        chosen.push(rn);
        let at_r = f_eval(&problem.r.with_head(&chosen)?, gamma)?;
        let slack = BigRational::one() - at_r;
        let value = if slack.is_negative() {
            // Only possible when γ sits within tol below gr(r).
            rn
        } else {
            let extra = floor_to_int(&(slack / &weight));
            let extra = extra.to_u64().unwrap_or(u64::MAX);
            rn.saturating_add(extra).min(tn)
        };
        if value < rn || value > tn {
            return Err(RealizeError::Infeasible(n));
        }
        *chosen.last_mut().expect("just pushed") = value;
    }
    let lower = growth_rate(&problem.r.with_head(&chosen)?, tol)?;
    let upper = growth_rate(&problem.t.with_head(&chosen)?, tol)?;
    Ok(RealizationCertificate {
        gamma: gamma.clone(),
        depth,
        chosen,
        lower,
        upper,
    })
}

/// The sequence equal to `r` except at the positions where `r` and `t`
/// differ: at the `i`-th such position (0-based) it takes `t` when
/// `bits[i mod L]` is set. Extending the bits cyclically keeps the result
/// eventually periodic.
pub fn choice_sequence(r: &SeqSpec, t: &SeqSpec, bits: &[bool]) -> Result<SeqSpec, RealizeError> {
    let (m, d) = r.common_window(t);
    for n in 1..=m + d {
        if r.term(n) > t.term(n) {
            return Err(RealizeError::NotDominated(n));
        }
    }
    let prefix_diffs = (1..=m).filter(|&n| r.term(n) != t.term(n)).count();
    let period_diffs = (m + 1..=m + d).filter(|&n| r.term(n) != t.term(n)).count();
    let len = bits.len();
    if period_diffs == 0 && len > prefix_diffs {
        return Err(RealizeError::TooManyBits {
            len,
            available: prefix_diffs,
        });
    }
    // Periods needed before the bit phase repeats.
    let repeats = if len == 0 || period_diffs == 0 {
        1
    } else {
        num_integer::lcm(len, period_diffs) / period_diffs
    };
    let mut diff_index = 0usize;
    let mut pick = |n: usize| -> u64 {
        let (rn, tn) = (r.term(n), t.term(n));
        if rn == tn {
            return rn;
        }
        let take_t = len > 0 && bits[diff_index % len];
        diff_index += 1;
        if take_t {
            tn
        } else {
            rn
        }
    };
    let prefix: Vec<u64> = (1..=m).map(&mut pick).collect();
    let tail: Vec<u64> = (m + 1..=m + d * repeats).map(&mut pick).collect();
    Ok(SeqSpec::new(prefix, tail)?)
}

/// Growth rate of [`choice_sequence`].
pub fn choice_rate(r: &SeqSpec, t: &SeqSpec, bits: &[bool], tol: &BigRational) -> Result<GrowthRate, RealizeError> {
    Ok(growth_rate(&choice_sequence(r, t, bits)?, tol)?)
}

/// Rate of a horizontal juxtaposition: brackets add. No polynomial is
/// attached.
pub fn juxtapose_rate(g1: &GrowthRate, g2: &GrowthRate) -> GrowthRate {
    GrowthRate {
        lo: &g1.lo + &g2.lo,
        hi: &g1.hi + &g2.hi,
        poly: None,
    }
}

/// Largest index whose terms agree in both sequences, scanning `limit`
/// terms.
pub fn agreement_length(a: &SeqSpec, b: &SeqSpec, limit: usize) -> usize {
    (1..=limit).take_while(|&n| a.term(n) == b.term(n)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn seq(s: &str) -> SeqSpec {
        s.parse().unwrap()
    }

    fn prop34(gamma: &str) -> RealizationProblem {
        RealizationProblem::new(seq("1,1,3,5;6"), seq("1,1,3,13;8"), 4, 3, q(gamma)).unwrap()
    }

    #[test]
    fn hypotheses_are_checked() {
        let g = q("2.6");
        assert_eq!(
            RealizationProblem::new(seq("1,1,3,13;8"), seq("1,1,3,5;6"), 4, 3, g.clone()),
            Err(RealizeError::NotDominated(4))
        );
        assert_eq!(
            RealizationProblem::new(seq("1,1,3,5;6"), seq("1,1,3,13;8"), 5, 3, g.clone()),
            Err(RealizeError::DiffersBeforeK { n: 4, k: 5 })
        );
        assert_eq!(
            RealizationProblem::new(seq("1,1,3,5;6"), seq("1,1,3,13;8"), 4, 4, g.clone()),
            Err(RealizeError::GapTooSmall { n: 5, gap: 2, needed: 3 })
        );
        assert_eq!(
            RealizationProblem::new(seq("1;1"), seq("1;1"), 1, 0, g),
            Err(RealizeError::ZeroB)
        );
    }

    #[test]
    fn endpoints_of_first_interval() {
        let ends = interval_endpoints(&seq("1,1,3,5;6"), &seq("1,1,3,13;8"), 3, &default_tol()).unwrap();
        assert!(ends.lower.near(&q("2.48187"), &q("5e-5")));
        assert!(ends.upper.near(&q("2.69284"), &q("5e-5")));
        assert!(!ends.capped_at_b);
    }

    #[test]
    fn cap_at_b() {
        // gr(;4) = 5 but the gap 3 allows b = 4.
        let ends = interval_endpoints(&seq(";1"), &seq(";4"), 4, &default_tol()).unwrap();
        assert!(ends.capped_at_b);
        assert_eq!(ends.upper, GrowthRate::exact(4));
    }

    #[test]
    fn realize_brackets_target() {
        for gamma in ["13/5", "5/2"] {
            let problem = prop34(gamma);
            let cert = realize(&problem, 40).unwrap();
            assert!(cert.brackets_gamma());
            assert!(cert.width() < q("1e-3"));
            assert!(cert.greedy_violations(&problem).is_empty());
        }
    }

    #[test]
    fn target_at_lower_end_stays_on_r() {
        let rate = growth_rate(&seq("1,1,3,5;6"), &default_tol()).unwrap();
        let problem = prop34("1").with_gamma(rate.lo.clone());
        let cert = realize(&problem, 20).unwrap();
        assert_eq!(cert.chosen, seq("1,1,3,5;6").terms(20));
    }

    #[test]
    fn target_outside_interval() {
        assert!(matches!(realize(&prop34("2"), 10), Err(RealizeError::GammaOutside { .. })));
        assert!(matches!(realize(&prop34("2.7"), 10), Err(RealizeError::GammaOutside { .. })));
        assert_eq!(realize(&prop34("2.6"), 0), Err(RealizeError::ZeroDepth));
    }

    #[test]
    fn choice_sequences_on_perfect_set_data() {
        let r = seq("1,1,2,3;4");
        let t = seq("1,1,2,3;5,4");
        assert!(choice_sequence(&r, &t, &[]).unwrap().same_terms(&r));
        assert!(choice_sequence(&r, &t, &[true]).unwrap().same_terms(&t));
        let alt = choice_sequence(&r, &t, &[true, false]).unwrap();
        assert_eq!(alt.terms(12), vec![1, 1, 2, 3, 5, 4, 4, 4, 5, 4, 4, 4]);
    }

    #[test]
    fn finite_difference_sets_limit_bits() {
        let r = seq("1,1;1");
        let t = seq("1,2;1");
        assert!(choice_sequence(&r, &t, &[true]).is_ok());
        assert_eq!(
            choice_sequence(&r, &t, &[true, false]),
            Err(RealizeError::TooManyBits { len: 2, available: 1 })
        );
    }

    #[test]
    fn juxtaposition_adds() {
        let sum = juxtapose_rate(&GrowthRate::exact(2), &GrowthRate::exact(3));
        assert_eq!((sum.lo.clone(), sum.hi.clone()), (q("5"), q("5")));
        assert!(sum.poly.is_none());
    }
}
