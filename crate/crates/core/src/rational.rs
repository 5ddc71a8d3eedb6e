//! Exact rational numbers used for parameters, weights and coordinates.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Builds `p/q` from machine integers. Panics if `q == 0`.
pub fn q(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// Builds an integer-valued rational.
pub fn qi(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

/// Parses `p/q` or `p` (surrounding whitespace is ignored).
pub fn parse_rational(text: &str) -> Result<Q, RationalError> {
    let s = text.trim();
    let malformed = || RationalError::Malformed(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(RationalError::ZeroDenominator(text.to_string()));
    }
    Ok(Q::new(num, den))
}

/// Reduced textual form: `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Q) -> String {
    value.to_string()
}

pub fn in_unit_interval(value: &Q) -> bool {
    !value.is_negative() && *value <= Q::one()
}

pub fn is_boundary(value: &Q) -> bool {
    value.is_zero() || value.is_one()
}

pub fn to_f64(value: &Q) -> f64 {
    use num::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
