//! Prime-field arithmetic.
//!
//! Polynomials store bare `u32` residues and do their arithmetic through a
//! [`PrimeField`] context; [`FieldElement`] bundles a residue with its
//! characteristic for the public API.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default characteristic for every construction.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// Arithmetic context for F_p with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p >= (1 << 31) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue class modulo a prime, carrying its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    pub fn new(value: i64, field: PrimeField) -> Self {
        FieldElement {
            value: field.from_i64(value),
            field,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inverse(&self) -> Option<Self> {
        (self.value != 0).then(|| FieldElement {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "mixing characteristics");
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        FieldElement {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        FieldElement {
            value: self.field.sub(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        FieldElement {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.to_signed(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(32003).is_ok());
        assert_eq!(PrimeField::new(32001), Err(Error::NotPrime(32001)));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn inverse_of_small_values() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::new(32003).unwrap();
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }

        #[test]
        fn element_ops_match_context(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            let f = PrimeField::new(32003).unwrap();
            let (x, y) = (FieldElement::new(a, f), FieldElement::new(b, f));
            prop_assert_eq!((x * y).value(), f.from_i64(a * b));
            prop_assert_eq!(x - y + y, x);
            if let Some(inv) = x.inverse() {
                prop_assert_eq!((x * inv).value(), 1);
            }
        }
    }
}
