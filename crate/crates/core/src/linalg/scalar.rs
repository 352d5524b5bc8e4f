//! Exact rational scalars and their textual form.
//!
//! `BigRational` keeps itself in lowest terms with a positive denominator, so
//! every value produced by arithmetic is already canonical and zero is `0/1`.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.25`, exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar literal".into()));
    }
    let bad = || Error::Parse(format!("invalid scalar literal {text:?}"));

    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = parse_integer(n).ok_or_else(bad)?;
        let den: BigInt = parse_integer(d).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Scalar::new(num, den));
    }

    if let Some((whole, fraction)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if whole.is_empty() && fraction.is_empty() {
            return Err(bad());
        }
        if !whole.chars().all(|c| c.is_ascii_digit())
            || !fraction.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{whole}{fraction}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num::pow(BigInt::from(10), fraction.len());
        let value = Scalar::new(num, den);
        return Ok(if negative { -value } else { value });
    }

    parse_integer(s).map(Scalar::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text: `p` for integers, `p/q` otherwise.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Denominator positive and coprime to the numerator.
pub fn is_canonical(v: &Scalar) -> bool {
    use num::Integer;
    v.denom().is_positive()
        && (v.numer().gcd(v.denom()).is_one() || (v.numer().is_zero() && v.denom().is_one()))
}
