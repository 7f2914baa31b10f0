//! Exact rational scalars. Everything in the engine is computed over the
//! rationals; no floating point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The coefficient field: arbitrary-precision rationals, always reduced.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatParseError {
    #[error("invalid rational `{0}`: expected an integer or `p/q`")]
    Malformed(String),
    #[error("invalid rational `{0}`: zero denominator")]
    ZeroDenominator(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `p/q` or a plain integer, with an optional leading sign.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let s = text.trim();
    let bad = || RatParseError::Malformed(text.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().map_err(|_| bad())?;
            let den: BigInt = q.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(RatParseError::ZeroDenominator(text.to_string()));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Render as `p/q`, or just `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Absolute value helper used by formatters that print the sign separately.
pub fn abs_rat(r: &Rat) -> Rat {
    r.abs()
}
