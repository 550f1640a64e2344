//! Sparse polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};

/// A polynomial as a list of `(monomial, coefficient)` terms, strictly
/// decreasing in the ring's order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::term(ring, Monomial::ONE, ring.field().from_i64(c))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::term(ring, Monomial::var(i), 1)
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        let c = c % ring.characteristic();
        Polynomial {
            ring: ring.clone(),
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds from arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        let p = ring.characteristic();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % p;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1 == 0 {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some(&(_, 0))) {
            out.pop();
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusts the caller that `terms` is already normalized.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from `(signed coefficient, exponent vector)` pairs.
    pub fn from_exponents(ring: &Arc<PolyRing>, terms: &[(i64, Vec<u32>)]) -> Result<Self> {
        let f = ring.field();
        let mut out = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::Invalid(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    ring.nvars()
                )));
            }
            out.push((Monomial::from_exponents(e)?, f.from_i64(*c)));
        }
        Ok(Self::from_terms(ring, out))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Coefficient of a given monomial (0 if absent).
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map_or(0, |i| self.terms[i].1)
    }

    /// Largest degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self.ring.degree(&self.terms[0].0))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, self.ring.characteristic() - 1))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    /// `self + c * other` by merging the two sorted term lists.
    pub(crate) fn combine(&self, other: &Polynomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let v = f.mul(t.1, c);
            if v != 0 {
                out.push((t.0, v));
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for &(m, c) in &small.terms {
            acc = acc.combine(&big.mul_term(&m, 1), c);
        }
        acc
    }

    pub fn scalar_mul(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// Multiplication by `c * m`; orders are multiplicative, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % self.ring.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(n, a)| (n.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) if c == 1 => self.clone(),
            Some(&(_, c)) => self.scalar_mul(self.ring.field().inv(c)),
        }
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter_map(|&(m, c)| {
                let e = m.exp(i) as i64;
                let low = m.lower(i)?;
                let v = f.mul(c, f.from_i64(e));
                (v != 0).then_some((low, v))
            })
            .collect();
        // Dividing the surviving terms by the same variable keeps their order.
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Substitutes `images[i]` for variable `i`. The images share a target
    /// ring, which may differ from this polynomial's ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for im in images {
            if !(Arc::ptr_eq(&im.ring, &target) || *im.ring == *target) {
                return Err(Error::RingMismatch);
            }
        }
        if target.characteristic() != self.ring.characteristic() {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|im| vec![Polynomial::constant(&target, 1), im.clone()])
            .collect();
        let mut acc = Polynomial::zero(&target);
        for &(m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c as i64);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().product(&pw[1]);
                    pw.push(next);
                }
                t = t.product(&pw[e]);
            }
            acc = acc.combine(&t, 1);
        }
        Ok(acc)
    }

    /// Value at a point of F_p^n.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.ring.field();
        let mut acc = 0u32;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &x) in point.iter().enumerate().take(self.ring.nvars()) {
                let e = m.exp(i);
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Moves to a ring with the same characteristic, sending variable `i` to
    /// variable `map[i]` of `target`.
    pub fn rename_into(&self, target: &Arc<PolyRing>, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.ring.nvars() || map.iter().any(|&t| t >= target.nvars()) {
            return Err(Error::Invalid("bad variable map".into()));
        }
        if target.characteristic() != self.ring.characteristic() {
            return Err(Error::RingMismatch);
        }
        let terms = self.terms.iter().map(|&(m, c)| (m.remap(map), c)).collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Same polynomial viewed in a ring with identical variables but another
    /// order or grading.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if target.names() != self.ring.names() {
            return Err(Error::RingMismatch);
        }
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.rename_into(target, &map)
    }

    /// Variables that occur with nonzero exponent.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print(self))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scalar_mul(self.ring.characteristic() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse;
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::p7()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let a = parse("x0 + x1", &r).unwrap();
        let b = parse("x0 - x1", &r).unwrap();
        assert_eq!(&a * &b, parse("x0^2 - x1^2", &r).unwrap());
        assert!((&a * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(&ring(), 0);
        let b = Polynomial::var(&PolyRing::standard(3, 7).unwrap(), 0);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn derivative_and_substitution() {
        let r = ring();
        let f = parse("x0^3*x1 + 2*x0*x2^2", &r).unwrap();
        assert_eq!(f.derivative(0), parse("3*x0^2*x1 + 2*x2^2", &r).unwrap());
        let images: Vec<Polynomial> = (0..8)
            .map(|i| if i == 1 { parse("x0 + x3", &r).unwrap() } else { Polynomial::var(&r, i) })
            .collect();
        assert_eq!(
            f.substitute(&images).unwrap(),
            parse("x0^4 + x0^3*x3 + 2*x0*x2^2", &r).unwrap()
        );
    }

    #[test]
    fn coefficient_lookup() {
        let r = ring();
        let f = parse("5*x0*x1 - x2^2", &r).unwrap();
        assert_eq!(f.coeff(&Monomial::var(0).mul(&Monomial::var(1))), 5);
        assert_eq!(f.coeff(&Monomial::var_pow(2, 2)), 32002);
        assert_eq!(f.coeff(&Monomial::var_pow(3, 2)), 0);
    }

    fn arb_homogeneous(d: u32) -> impl Strategy<Value = Vec<(i64, usize)>> {
        let n = Monomial::all_of_degree(4, d).len();
        proptest::collection::vec((-50i64..50, 0..n), 1..8)
    }

    fn build(d: u32, spec: &[(i64, usize)]) -> Polynomial {
        let r = PolyRing::standard(4, 32003).unwrap();
        let monos = Monomial::all_of_degree(4, d);
        let terms = spec
            .iter()
            .map(|&(c, i)| (monos[i], r.field().from_i64(c)))
            .collect();
        Polynomial::from_terms(&r, terms)
    }

    proptest! {
        #[test]
        fn degree_is_additive(a in arb_homogeneous(2), b in arb_homogeneous(3)) {
            let f = build(2, &a);
            let g = build(3, &b);
            let h = &f * &g;
            prop_assert!(h.is_homogeneous());
            if !f.is_zero() && !g.is_zero() {
                prop_assert_eq!(h.degree(), Some(5));
            }
        }

        #[test]
        fn ring_axioms(a in arb_homogeneous(2), b in arb_homogeneous(2), c in arb_homogeneous(1)) {
            let (f, g, h) = (build(2, &a), build(2, &b), build(1, &c));
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert!((&f - &f).is_zero());
            prop_assert_eq!(&(&f + &g) - &g, f.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_homogeneous(2), b in arb_homogeneous(1),
                                        pt in proptest::collection::vec(0u32..32003, 4)) {
            let (f, g) = (build(2, &a), build(1, &b));
            let fld = f.ring().field();
            prop_assert_eq!((&f * &g).evaluate(&pt), fld.mul(f.evaluate(&pt), g.evaluate(&pt)));
            prop_assert_eq!((&f + &f).evaluate(&pt), fld.add(f.evaluate(&pt), f.evaluate(&pt)));
        }
    }
}
