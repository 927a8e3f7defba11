//! Exact rational values.
//!
//! All valuations, welfare totals, and fairness thresholds in this crate are
//! arbitrary-precision rationals. The fairness predicates are equality-sharp
//! (a tie is a pass), so nothing in the crate ever rounds.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for `n/d`.
///
/// Panics if `d == 0`; use [`parse_rational`] for untrusted input.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty value")]
    Empty,
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
    #[error("not a rational value: {0:?}")]
    Malformed(String),
}

/// Parses a rational from `p/q`, decimal (`-3.25`), or integer (`17`) form.
///
/// Decimal strings are scaled by powers of ten, so the result is exact; no
/// binary floating point is involved at any stage.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(text.to_owned()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(RationalParseError::Malformed(text.to_owned()));
        }
        let digits = format!("{int_digits}{frac_part}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits
                .parse()
                .map_err(|_| RationalParseError::Malformed(text.to_owned()))?
        };
        let mut denom = BigInt::one();
        for _ in 0..frac_part.len() {
            denom *= 10;
        }
        return Ok(Rational::new(BigInt::from(sign) * numer, denom));
    }
    let numer: BigInt = s
        .parse()
        .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
    Ok(Rational::from_integer(numer))
}

/// Canonical text form: `p/q` in lowest terms, or just `p` when integral.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}
