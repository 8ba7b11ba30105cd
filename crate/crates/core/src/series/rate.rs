use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{seq_to_polynomial, Polynomial, SeqSpec, SeriesError};
use crate::numeric::{self, serialize_rational};

/// Default bracket width for [`growth_rate`]: `10^-9`.
pub fn default_tol() -> BigRational {
    numeric::pow10(-9)
}

/// A certified bracket `[lo, hi]` around a growth rate, with the integer
/// polynomial it is a root of when one is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRate {
    #[serde(serialize_with = "serialize_rational")]
    pub lo: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub hi: BigRational,
    pub poly: Option<Polynomial>,
}

impl GrowthRate {
    /// The degenerate bracket `[v, v]` for an integer rate `v`, root of
    /// `x - v`.
    pub fn exact(v: i64) -> Self {
        let value = BigRational::from_integer(v.into());
        GrowthRate {
            lo: value.clone(),
            hi: value,
            poly: Some(Polynomial::from_descending([1, -v])),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether `x` lies within `slack` of the bracket.
    pub fn near(&self, x: &BigRational, slack: &BigRational) -> bool {
        &(&self.lo - slack) <= x && x <= &(&self.hi + slack)
    }

    /// Checks `f(lo) >= 1 >= f(hi)` exactly for `f(x) = sum s_n x^-n`.
    pub fn certifies(&self, seq: &SeqSpec) -> bool {
        compare_with_one(seq, &self.lo) != Ordering::Less
            && compare_with_one(seq, &self.hi) != Ordering::Greater
    }
}

/// `sum_{n>=1} s_n x^-n` for rational `x > 1`, exactly.
pub fn f_eval(seq: &SeqSpec, x: &BigRational) -> Result<BigRational, SeriesError> {
    if x <= &BigRational::one() {
        return Err(SeriesError::NotAboveOne);
    }
    let (num, den) = f_fraction(seq, x);
    Ok(BigRational::new(num, den))
}

/// Compares `sum s_n x^-n` with 1 without reducing the fraction. Requires
/// `x > 1`.
pub fn compare_with_one(seq: &SeqSpec, x: &BigRational) -> Ordering {
    assert!(x > &BigRational::one(), "series only converges for x > 1");
    let (num, den) = f_fraction(seq, x);
    num.cmp(&den)
}

/// Numerator and positive denominator of `f(x)` with `x = a/b`:
///
/// `f = (S (a^d - b^d) + b^m T) / (a^m (a^d - b^d))`
///
/// where `S = sum_i p_i a^(m-i) b^i` over the prefix and
/// `T = sum_j q_j a^(d-j) b^j` over one period.
fn f_fraction(seq: &SeqSpec, x: &BigRational) -> (BigInt, BigInt) {
    let a = x.numer();
    let b = x.denom();
    let horner = |terms: &[u64]| -> (BigInt, BigInt, BigInt) {
        // Returns (sum, a^len, b^len).
        let mut acc = BigInt::zero();
        let mut a_pow = BigInt::one();
        let mut b_pow = BigInt::one();
        for &t in terms {
            b_pow *= b;
            a_pow *= a;
            acc = acc * a + &b_pow * t;
        }
        (acc, a_pow, b_pow)
    };
    let (s, a_m, b_m) = horner(seq.prefix());
    let (t, a_d, b_d) = horner(seq.tail());
    let gap = a_d - b_d;
    let num = s * &gap + b_m * t;
    let den = a_m * gap;
    (num, den)
}

/// Brackets the unique `x > 1` with `sum s_n x^-n = 1` to width at most
/// `tol`, by bisection on the strictly decreasing left-hand side.
///
/// The starting bracket is `[1 + 2^-j, c + 2]` with `2^j >= c + 1`, so every
/// midpoint is dyadic.
pub fn growth_rate(seq: &SeqSpec, tol: &BigRational) -> Result<GrowthRate, SeriesError> {
    if !tol.is_positive() {
        return Err(SeriesError::NonPositiveTolerance);
    }
    let c = seq.bound();
    let mut step = BigInt::one();
    while step < BigInt::from(c + 1) {
        step *= 2;
    }
    let mut lo = BigRational::one() + BigRational::new(BigInt::one(), step);
    let mut hi = BigRational::from_integer(BigInt::from(c + 2));
    debug_assert_ne!(compare_with_one(seq, &lo), Ordering::Less);
    debug_assert_eq!(compare_with_one(seq, &hi), Ordering::Less);

    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        match compare_with_one(seq, &mid) {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => {
                lo = mid.clone();
                hi = mid;
            }
        }
    }
    Ok(GrowthRate {
        lo,
        hi,
        poly: Some(seq_to_polynomial(seq)),
    })
}

/// A prefix length `m` such that two sequences bounded by `c` that agree on
/// their first `m` terms have growth rates within `eps`:
/// `m = ceil(log2(4 c (c+1)^2 / eps))`, at least 1.
pub fn proximity_bound(eps: &BigRational, c: u64) -> Result<u32, SeriesError> {
    if !eps.is_positive() {
        return Err(SeriesError::NonPositiveTolerance);
    }
    let c = BigInt::from(c);
    let target = BigRational::from_integer(BigInt::from(4) * &c * (&c + 1u32) * (&c + 1u32)) / eps;
    let mut m = 1u32;
    let mut power = BigRational::from_integer(2.into());
    while power < target {
        power *= BigRational::from_integer(2.into());
        m += 1;
    }
    Ok(m)
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

    #[test]
    fn f_eval_constant_sequence_is_exactly_one() {
        for c in 1..=8u64 {
            let s = seq(&format!("{c};{c}"));
            let x = BigRational::from_integer(BigInt::from(c + 1));
            assert_eq!(f_eval(&s, &x).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn f_eval_matches_truncated_sum() {
        // Independent check: direct partial sum over 200 terms plus a crude
        // tail estimate.
        let s = seq("1,1,3,5;6");
        let x = q("5/2");
        let mut direct = BigRational::zero();
        let mut power = BigRational::one();
        for n in 1..=200 {
            power /= &x;
            direct += &power * BigRational::from_integer(s.term(n).into());
        }
        let exact = f_eval(&s, &x).unwrap();
        assert!(exact > direct);
        assert!(&exact - &direct < q("1e-70"));
    }

    #[test]
    fn f_eval_near_lambda() {
        let v = f_eval(&seq("1,1,3,5;6"), &q("248187/100000")).unwrap();
        assert!((v - BigRational::one()).abs() < q("1e-4"));
    }

    #[test]
    fn f_eval_rejects_small_x() {
        assert_eq!(f_eval(&seq("1;1"), &q("1")), Err(SeriesError::NotAboveOne));
        assert_eq!(f_eval(&seq("1;1"), &q("1/2")), Err(SeriesError::NotAboveOne));
    }

    #[test]
    fn f_eval_decays() {
        let s = seq("1,1,3,13;8");
        let mut last = f_eval(&s, &q("2")).unwrap();
        for x in ["3", "10", "100", "1000"] {
            let x = q(x);
            let v = f_eval(&s, &x).unwrap();
            assert!(v < last);
            assert!(v < BigRational::from_integer(13.into()) / (&x - BigRational::one()));
            last = v;
        }
    }

    #[test]
    fn lambda_bracket() {
        let g = growth_rate(&seq("1,1,3,5;6"), &default_tol()).unwrap();
        assert!(g.width() <= default_tol());
        assert!(g.near(&q("2.48187"), &q("5e-5")));
        assert!(g.certifies(&seq("1,1,3,5;6")));
        assert_eq!(g.poly.unwrap().to_string(), "1,-2,0,-2,-2,-1");
    }

    #[test]
    fn constant_rate_is_exact() {
        let g = growth_rate(&seq("2;2"), &default_tol()).unwrap();
        assert!(g.contains(&q("3")));
    }

    #[test]
    fn rejects_nonpositive_tol() {
        assert_eq!(
            growth_rate(&seq("1;1"), &q("0")),
            Err(SeriesError::NonPositiveTolerance)
        );
    }

    #[test]
    fn proximity_examples() {
        assert_eq!(proximity_bound(&q("0.01"), 8).unwrap(), 18);
        assert_eq!(proximity_bound(&q("0.01"), 5).unwrap(), 17);
        assert_eq!(proximity_bound(&q("288"), 2).unwrap(), 1);
        assert_eq!(proximity_bound(&q("10000"), 2).unwrap(), 1);
        assert!(proximity_bound(&q("0"), 2).is_err());
    }
}
