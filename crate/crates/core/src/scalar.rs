//! Exact rational scalars.
//!
//! `BigRational` already keeps its fraction reduced with a positive
//! denominator, so this module only adds construction, parsing and
//! formatting helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics if `den` is zero.
pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    int(1)
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, digits)) = s.split_once('.') {
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_digits = if whole_digits.is_empty() { "0" } else { whole_digits };
        let joined: BigInt = format!("{whole_digits}{digits}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), digits.len());
        let value = BigRational::new(joined, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn sign_of_parity(odd: bool) -> Scalar {
    if odd {
        int(-1)
    } else {
        int(1)
    }
}
