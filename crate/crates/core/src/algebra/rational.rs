//! Exact rationals, used only by the toric intersection calculus.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Normalized arbitrary-precision fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Converts to `i64` when the value is an integer, otherwise reports it.
pub fn to_integer(r: &Rational, what: &str) -> Result<i64> {
    if !r.denom().is_one() {
        return Err(Error::NonIntegral(format!("{what} = {r}")));
    }
    r.numer()
        .to_i64()
        .ok_or_else(|| Error::NonIntegral(format!("{what} = {r} does not fit in i64")))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn integrality() {
        assert_eq!(to_integer(&(rat(7, 4) * int(12)), "x").unwrap(), 21);
        assert!(to_integer(&rat(1, 2), "x").is_err());
    }
}
