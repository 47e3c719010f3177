//! Exact rational numbers and their canonical text form.
//!
//! Probabilities, expectation values, correlators, and hidden-variable
//! weights are all rationals; they are serialized as `"num/den"` strings
//! (plain `"num"` when the denominator is one) so no consumer ever sees a
//! float.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `"3/4"`, `"-1/3"`, `"2"`, `"0"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the canonical text form. Accepts `"a/b"` and `"a"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidArgs(format!("cannot parse rational {s:?}"));
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::InvalidArgs(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(numer, denom))
}

/// True when `r` lies in the closed interval `[0, 1]`.
pub fn is_probability(r: &Rat) -> bool {
    !r.is_negative() && *r <= rat(1)
}
