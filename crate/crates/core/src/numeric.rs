//! Exact rational helpers: text parsing and fixed-significance decimal
//! rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serializer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot read {0:?} as a rational number")]
pub struct RationalParseError(pub String);

/// Parses `"13/5"`, `"2.6"`, `"-3"`, `"1e-9"` or `"2.5E3"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if !int_digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_digits}{frac_part}");
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().map_err(|_| err())?);
    let scale = exponent - frac_part.len() as i32;
    value *= pow10(scale);
    Ok(if negative { -value } else { value })
}

/// `10^e` as an exact rational, for any sign of `e`.
pub fn pow10(e: i32) -> BigRational {
    let p = BigRational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Renders `value` rounded (half away from zero) to `sig` significant
/// digits in plain positional notation.
pub fn format_decimal(value: &BigRational, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if value.is_zero() {
        return "0".to_string();
    }
    let magnitude = value.abs();
    let mut exp = decimal_exponent(&magnitude);
    let shift = sig as i32 - 1 - exp;
    let scaled = &magnitude * pow10(shift);
    let mut digits = round_half_up(&scaled);
    if digits == num_traits::pow(BigInt::from(10), sig) {
        digits /= 10;
        exp += 1;
    }
    let digits = digits.to_str_radix(10);
    let body = if exp >= sig as i32 - 1 {
        format!("{digits}{}", "0".repeat((exp - (sig as i32 - 1)) as usize))
    } else if exp < 0 {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        let split = (exp + 1) as usize;
        format!("{}.{}", &digits[..split], &digits[split..])
    };
    if value.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

/// `floor(log10(x))` for positive `x`.
fn decimal_exponent(x: &BigRational) -> i32 {
    let mut e = x.to_f64().map(|f| f.log10().floor() as i32).unwrap_or(0);
    // Correct the floating estimate exactly.
    while &pow10(e) > x {
        e -= 1;
    }
    while &pow10(e + 1) <= x {
        e += 1;
    }
    e
}

fn round_half_up(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_rem(x.denom());
    let twice = r * 2;
    if twice >= *x.denom() {
        q + BigInt::one()
    } else {
        q
    }
}

/// Largest integer `<= x`.
pub fn floor_to_int(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Serializes a rational as `{"num": "...", "den": "..."}` with decimal
/// integer strings.
pub fn serialize_rational<S: Serializer>(value: &BigRational, serializer: S) -> Result<S::Ok, S::Error> {
    let mut st = serializer.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &value.numer().to_string())?;
    st.serialize_field("den", &value.denom().to_string())?;
    st.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rational("13/5").unwrap(), q(13, 5));
        assert_eq!(parse_rational("2.6").unwrap(), q(13, 5));
        assert_eq!(parse_rational("1e-9").unwrap(), q(1, 1_000_000_000));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("2.5E3").unwrap(), q(2500, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&q(248187, 100000), 6), "2.48187");
        assert_eq!(format_decimal(&q(3, 1), 6), "3.00000");
        assert_eq!(format_decimal(&q(2, 3), 3), "0.667");
        assert_eq!(format_decimal(&q(999_999, 100_000), 3), "10.0");
        assert_eq!(format_decimal(&q(123_456, 1), 2), "120000");
        assert_eq!(format_decimal(&q(-1, 800), 2), "-0.0013");
        assert_eq!(format_decimal(&q(0, 1), 4), "0");
    }
}
