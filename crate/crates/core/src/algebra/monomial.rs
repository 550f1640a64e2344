//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of variables of any ring.
pub const MAX_VARS: usize = 16;

/// Exponent vector with cached total degree.
///
/// Exponents are `u8`; every product checks for overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            if e > u8::MAX as u32 {
                return Err(Error::ExponentOverflow);
            }
            m.exps[i] = e as u8;
            m.deg += e as u16;
        }
        Ok(m)
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn var_pow(i: usize, e: u8) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.deg = e as u16;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn exponent_vec(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bitmask of the variables that occur; used to reject divisibility fast.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .ok_or(Error::ExponentOverflow)?;
        }
        out.deg = self.deg + other.deg;
        Ok(out)
    }

    /// Product; panics on exponent overflow, which the degree bounds of this
    /// crate never reach.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        out.deg = self.deg + other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = other.exps[i] - self.exps[i];
        }
        out.deg = other.deg - self.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u16;
        }
        out.deg = deg;
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Monomial::ONE;
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            deg += out.exps[i] as u16;
        }
        out.deg = deg;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Weighted degree under a grading vector.
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    /// Exponent vector with variable `i` removed by one power, for derivatives.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut out = *self;
        out.exps[i] -= 1;
        out.deg -= 1;
        Some(out)
    }

    /// Divides by `x_i^k`; the caller guarantees divisibility.
    pub fn quotient_of_var(&self, i: usize, k: u8) -> Monomial {
        let mut out = *self;
        out.exps[i] -= k;
        out.deg -= k as u16;
        out
    }

    /// Reindexes variables: exponent of `i` moves to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut out = Monomial::ONE;
        for (i, &target) in map.iter().enumerate() {
            out.exps[target] += self.exps[i];
        }
        out.deg = self.deg;
        out
    }

    /// All monomials of total degree `d` in the first `nvars` variables, in
    /// lexicographically decreasing exponent order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::from_exponents(&cur[..nvars]).unwrap());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, nvars, d, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "v{i}")?;
            } else {
                write!(f, "v{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Total orders on monomials refining divisibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Block order: the first `k` variables are compared first (graded
    /// reverse lexicographic inside the block), then grevlex on the rest.
    /// Any monomial involving the first block beats every monomial free of it.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_range(a, b, 0, MAX_VARS, true),
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination(k) => match grevlex_range(a, b, 0, k, false) {
                Ordering::Equal => grevlex_range(a, b, k, MAX_VARS, false),
                o => o,
            },
        }
    }

    /// Same order with degrees measured by a positive grading vector.
    /// Lex ignores the grading.
    #[inline]
    pub fn cmp_weighted(&self, a: &Monomial, b: &Monomial, w: &[u32; MAX_VARS]) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => weighted_grevlex_range(a, b, 0, MAX_VARS, w),
            MonomialOrder::Lex => self.cmp(a, b),
            MonomialOrder::Elimination(k) => match weighted_grevlex_range(a, b, 0, k, w) {
                Ordering::Equal => weighted_grevlex_range(a, b, k, MAX_VARS, w),
                o => o,
            },
        }
    }
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize, whole: bool) -> Ordering {
    let (da, db) = if whole {
        (a.deg as u32, b.deg as u32)
    } else {
        (
            a.exps[lo..hi].iter().map(|&e| e as u32).sum::<u32>(),
            b.exps[lo..hi].iter().map(|&e| e as u32).sum::<u32>(),
        )
    };
    if da != db {
        return da.cmp(&db);
    }
    revlex_tail(a, b, lo, hi)
}

#[inline]
fn weighted_grevlex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize, w: &[u32; MAX_VARS]) -> Ordering {
    let mut da = 0u32;
    let mut db = 0u32;
    for i in lo..hi {
        da += a.exps[i] as u32 * w[i];
        db += b.exps[i] as u32 * w[i];
    }
    if da != db {
        return da.cmp(&db);
    }
    revlex_tail(a, b, lo, hi)
}

#[inline]
fn revlex_tail(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}
