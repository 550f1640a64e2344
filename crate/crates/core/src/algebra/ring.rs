//! Polynomial ring descriptors.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::{PrimeField, DEFAULT_CHARACTERISTIC};
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// A graded polynomial ring F_p[v_0, ..., v_{n-1}] with a monomial order.
///
/// Variables carry positive integer weights (all 1 unless stated); the order
/// compares weighted degrees first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    field: PrimeField,
    order: MonomialOrder,
    weights: [u32; MAX_VARS],
    standard: bool,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], p: u32, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::weighted(names, &vec![1; names.len()], p, order)
    }

    pub fn weighted<S: AsRef<str>>(
        names: &[S],
        weights: &[u32],
        p: u32,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        if weights.len() != names.len() || weights.iter().any(|&w| w == 0) {
            return Err(Error::Invalid("weights must be positive, one per variable".into()));
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > names.len() {
                return Err(Error::Invalid(format!("cannot eliminate {k} of {} variables", names.len())));
            }
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::Invalid(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        let mut w = [1u32; MAX_VARS];
        w[..weights.len()].copy_from_slice(weights);
        Ok(Arc::new(PolyRing {
            names,
            field: PrimeField::new(p)?,
            order,
            standard: weights.iter().all(|&x| x == 1),
            weights: w,
        }))
    }

    /// `x0, ..., x{n-1}` with grevlex.
    pub fn standard(n: usize, p: u32) -> Result<Arc<Self>> {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        Self::new(&names, p, MonomialOrder::Grevlex)
    }

    /// Homogeneous coordinate ring of P^7 over F_32003.
    pub fn p7() -> Arc<Self> {
        Self::standard(8, DEFAULT_CHARACTERISTIC).expect("static ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights[..self.names.len()]
    }

    pub fn is_standard_graded(&self) -> bool {
        self.standard
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.standard {
            self.order.cmp(a, b)
        } else {
            self.order.cmp_weighted(a, b, &self.weights)
        }
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        if self.standard {
            m.degree()
        } else {
            m.weighted_degree(&self.weights)
        }
    }

    /// Same variables and grading, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::weighted(&self.names, self.weights(), self.characteristic(), order)
    }

    /// Same variables and order over another prime.
    pub fn with_characteristic(&self, p: u32) -> Result<Arc<Self>> {
        Self::weighted(&self.names, self.weights(), p, self.order)
    }

    /// Ring with extra variables placed before the existing ones.
    pub fn prepend(&self, names: &[&str], weights: &[u32], order: MonomialOrder) -> Result<Arc<Self>> {
        let mut all: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        all.extend(self.names.iter().cloned());
        let mut w = weights.to_vec();
        w.extend_from_slice(self.weights());
        Self::weighted(&all, &w, self.characteristic(), order)
    }

    /// Ring with extra variables placed after the existing ones.
    pub fn append(&self, names: &[&str], weights: &[u32], order: MonomialOrder) -> Result<Arc<Self>> {
        let mut all = self.names.clone();
        all.extend(names.iter().map(|s| s.to_string()));
        let mut w = self.weights().to_vec();
        w.extend_from_slice(weights);
        Self::weighted(&all, &w, self.characteristic(), order)
    }

    /// Number of monomials of degree `d` (standard grading).
    pub fn monomial_count(&self, d: u32) -> u64 {
        binomial(d as u64 + self.nvars() as u64 - 1, self.nvars() as u64 - 1)
    }

    /// A fresh variable name that does not clash with existing ones.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut i = 0usize;
        loop {
            let cand = if i == 0 { stem.to_string() } else { format!("{stem}{i}") };
            if self.var_index(&cand).is_none() {
                return cand;
            }
            i += 1;
        }
    }
}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}] {:?}", self.characteristic(), self.names.join(","), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::new(&["x", "x"], 7, MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(&["1x"], 7, MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::standard(17, 7).is_err());
        assert!(PolyRing::standard(3, 8).is_err());
    }

    #[test]
    fn counts_monomials() {
        let r = PolyRing::p7();
        assert_eq!(r.monomial_count(2), 36);
        assert_eq!(r.monomial_count(3), 120);
        assert_eq!(binomial(9, 7), 36);
    }

    #[test]
    fn weighted_degree_drives_order() {
        let r = PolyRing::weighted(&["a", "b"], &[1, 3], 7, MonomialOrder::Grevlex).unwrap();
        let a3 = Monomial::var_pow(0, 3);
        let b = Monomial::var(1);
        assert_eq!(r.degree(&b), 3);
        // equal weighted degree: revlex puts b (last) smaller
        assert_eq!(r.cmp(&a3, &b), Ordering::Greater);
        assert_eq!(r.cmp(&Monomial::var_pow(0, 2), &b), Ordering::Less);
    }
}
