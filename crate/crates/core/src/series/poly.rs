use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::SeqSpec;

/// Integer polynomial, coefficients stored from the highest degree down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// Builds from coefficients listed highest degree first; leading zeros are
    /// dropped.
    pub fn from_descending<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs
            .into_iter()
            .map(Into::into)
            .skip_while(Zero::is_zero)
            .collect();
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Divides out the gcd of the coefficients and makes the leading
    /// coefficient positive.
    pub fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
        if self.coeffs.first().is_some_and(Signed::is_negative) {
            for c in &mut self.coeffs {
                *c = -&*c;
            }
        }
        self
    }

    /// Human-readable form such as `x^5 - 2x^4 - 2x^2 - 2x - 1`.
    pub fn pretty(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let deg = self.degree();
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = deg - i;
            let magnitude = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !magnitude.is_one() || power == 0 {
                out.push_str(&magnitude.to_string());
            }
            match power {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{power}")),
            }
        }
        out
    }
}

/// Comma-separated coefficients from the highest degree, e.g.
/// `1,-2,0,-2,-2,-1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coeffs.iter().join(","))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The integer polynomial whose roots in `(1, inf)` are exactly the solutions
/// of `sum s_n x^-n = 1`.
///
/// With prefix `p_1..p_m` and period `q_1..q_d`, multiplying through by
/// `x^m (x^d - 1)` gives
/// `x^m (x^d - 1) - (x^d - 1) sum p_i x^(m-i) - sum q_j x^(d-j)`.
pub fn seq_to_polynomial(seq: &SeqSpec) -> Polynomial {
    let m = seq.prefix().len();
    let d = seq.period();
    // Ascending coefficients, degree m + d.
    let mut asc = vec![BigInt::zero(); m + d + 1];
    asc[m + d] += 1;
    asc[m] -= 1;
    for (i, &p) in seq.prefix().iter().enumerate() {
        let power = m - (i + 1);
        asc[power + d] -= p;
        asc[power] += p;
    }
    for (j, &q) in seq.tail().iter().enumerate() {
        asc[d - (j + 1)] -= q;
    }
    Polynomial::from_descending(asc.into_iter().rev()).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_of(s: &str) -> Polynomial {
        seq_to_polynomial(&s.parse().unwrap())
    }

    #[test]
    fn printed_polynomials() {
        assert_eq!(poly_of("1,1,3,5;6"), Polynomial::from_descending([1, -2, 0, -2, -2, -1]));
        assert_eq!(poly_of("1,1,3,13;8"), Polynomial::from_descending([1, -2, 0, -2, -10, 5]));
        assert_eq!(poly_of("1,1,2,3;4"), Polynomial::from_descending([1, -2, 0, -1, -1, -1]));
        assert_eq!(
            poly_of("1,1,2,3;5,4"),
            Polynomial::from_descending([1, -1, -2, -1, -2, -3, -1])
        );
    }

    #[test]
    fn constant_sequence_polynomial() {
        // x - 3 for the empty-prefix form, x(x - 3) when the first term is
        // written out.
        assert_eq!(poly_of(";2"), Polynomial::from_descending([1, -3]));
        assert_eq!(poly_of("2;2"), Polynomial::from_descending([1, -3, 0]));
    }

    #[test]
    fn display_forms() {
        let p = poly_of("1,1,3,5;6");
        assert_eq!(p.to_string(), "1,-2,0,-2,-2,-1");
        assert_eq!(p.pretty(), "x^5 - 2x^4 - 2x^2 - 2x - 1");
        assert_eq!(Polynomial::from_descending([-3, 6]).normalized().pretty(), "x - 2");
        assert_eq!(Polynomial::from_descending([0, 0, 2]).pretty(), "2");
    }
}
