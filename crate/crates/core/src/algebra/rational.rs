use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::AlgebraError;

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<BigRational, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::BadRational(text.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

/// Canonical `"p/q"` (or `"p"` for integers) text.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A random nonzero rational with numerator and denominator magnitudes at most `bound`.
pub fn random_nonzero<R: rand::Rng + ?Sized>(rng: &mut R, bound: i64) -> BigRational {
    let mut p = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        p = -p;
    }
    ratio(p, rng.gen_range(1..=bound))
}

/// Writes a coefficient in front of a non-constant term: `""`, `"-"`, `"3*"`, `"-1/2*"`.
pub(crate) fn coefficient_prefix(q: &BigRational) -> String {
    if q.is_one() {
        String::new()
    } else if (-q).is_one() {
        "-".to_string()
    } else {
        format!("{}*", format_rational(q))
    }
}
