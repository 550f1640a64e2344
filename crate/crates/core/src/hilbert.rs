//! Hilbert series, dimension and degree from lead-term ideals.

use serde::{Deserialize, Serialize};

use crate::algebra::ring::binomial;
use crate::algebra::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// Hilbert series data of `R/I` for a standard-graded `R` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// `N(t)` with `HS(R/I) = N(t) / (1 - t)^n`, coefficients by degree.
    pub numerator: Vec<i64>,
    /// Number of variables `n`.
    pub nvars: usize,
    /// Height of `I` (multiplicity of the root `t = 1` in `N`).
    pub codim: usize,
    /// `n - codim - 1`; `-1` when `R/I` has finite length.
    pub projective_dimension: i64,
    /// `Q(1)` where `N(t) = (1 - t)^codim Q(t)`; 0 for the unit ideal.
    pub degree: i64,
}

impl HilbertData {
    pub fn from_numerator(numerator: Vec<i64>, nvars: usize) -> Self {
        let mut q = trim(numerator.clone());
        if q.is_empty() {
            return HilbertData {
                numerator: q,
                nvars,
                codim: nvars,
                projective_dimension: -1,
                degree: 0,
            };
        }
        let mut codim = 0;
        while q.iter().sum::<i64>() == 0 {
            q = divide_one_minus_t(&q);
            codim += 1;
        }
        HilbertData {
            numerator: trim(numerator),
            nvars,
            codim,
            projective_dimension: nvars as i64 - codim as i64 - 1,
            degree: q.iter().sum(),
        }
    }

    /// `Q(t)` with `HS = Q(t) / (1 - t)^(n - codim)`.
    pub fn reduced_numerator(&self) -> Vec<i64> {
        let mut q = self.numerator.clone();
        for _ in 0..self.codim {
            q = divide_one_minus_t(&q);
        }
        q
    }

    /// `dim_k (R/I)_m`.
    pub fn hilbert_function(&self, m: u32) -> i64 {
        let n = self.nvars as i64;
        let mut acc = 0i64;
        for (k, &c) in self.numerator.iter().enumerate() {
            let k = k as i64;
            if k > m as i64 {
                break;
            }
            // coefficient of t^(m-k) in 1/(1-t)^n
            acc += c * binomial((m as i64 - k + n - 1) as u64, (n - 1) as u64) as i64;
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.numerator.is_empty()
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Exact division by `1 - t`; the caller guarantees `p(1) = 0`.
fn divide_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - t) q  =>  q_k = sum_{i <= k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut run = 0i64;
    for &c in &p[..p.len().saturating_sub(1)] {
        run += c;
        q.push(run);
    }
    debug_assert_eq!(run + p.last().copied().unwrap_or(0), 0);
    trim(q)
}

/// Hilbert numerator of `k[x_0..x_{n-1}] / (gens)` for a monomial ideal, by
/// recursive pivoting.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    let mut g = minimize(gens.to_vec());
    trim(numerator_rec(&mut g))
}

fn minimize(mut g: Vec<Monomial>) -> Vec<Monomial> {
    g.sort_by_key(|m| m.degree());
    g.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(g.len());
    for m in g {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn one_minus_t_pow(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

fn numerator_rec(g: &mut Vec<Monomial>) -> Vec<i64> {
    if g.is_empty() {
        return vec![1];
    }
    if g.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    // Pull out generators coprime to all others: each contributes a factor.
    let mut counts = [0u32; MAX_VARS];
    for m in g.iter() {
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (free, rest): (Vec<Monomial>, Vec<Monomial>) = g
        .iter()
        .partition(|m| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || counts[i] == 1));
    let mut factor = vec![1i64];
    for m in &free {
        factor = poly_mul(&factor, &one_minus_t_pow(m.degree()));
    }
    if rest.is_empty() {
        return factor;
    }
    // Pivot on the most frequent variable, with a middle exponent.
    let (var, _) = counts
        .iter()
        .enumerate()
        .filter(|(i, _)| rest.iter().any(|m| m.exp(*i) > 0))
        .max_by_key(|&(i, &c)| (c, std::cmp::Reverse(i)))
        .expect("nonempty");
    let mut exps: Vec<u8> = rest.iter().map(|m| m.exp(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let pivot = Monomial::var_pow(var, e);
    // N(M) = N(M + p) + t^deg(p) N(M : p)
    let mut plus: Vec<Monomial> = rest.clone();
    plus.push(pivot);
    let mut plus = minimize(plus);
    let mut colon: Vec<Monomial> = rest
        .iter()
        .map(|m| {
            let g = m.gcd(&pivot);
            g.quotient_of(m).expect("gcd divides")
        })
        .collect();
    colon = minimize(colon);
    let mut acc = numerator_rec(&mut plus);
    let c = numerator_rec(&mut colon);
    poly_add_shifted(&mut acc, &c, e as usize);
    poly_mul(&factor, &acc)
}

/// Expected `h^0(mA)` for a Calabi–Yau threefold of degree `d = A^3`, from
/// Riemann–Roch with `2A^3 + A.c_2 = 96`: `m^3 d/6 + m(96 - 2d)/12`.
pub fn rr_expected_h0(d: i64, m: i64) -> Result<i64> {
    if !(14..=20).contains(&d) || m < 1 {
        return Err(Error::Invalid(format!("expected 14 <= d <= 20 and m >= 1, got d={d}, m={m}")));
    }
    let num = 2 * m * m * m * d + m * (96 - 2 * d);
    if num % 12 != 0 {
        return Err(Error::NonIntegral(format!("h0({m}A) for degree {d} is {num}/12")));
    }
    Ok(num / 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn zero_ideal() {
        let h = HilbertData::from_numerator(monomial_numerator(&[]), 8);
        assert_eq!((h.projective_dimension, h.degree), (7, 1));
        assert_eq!(h.hilbert_function(2), 36);
    }

    #[test]
    fn four_variables() {
        let gens: Vec<Monomial> = (4..8).map(Monomial::var).collect();
        let h = HilbertData::from_numerator(monomial_numerator(&gens), 8);
        assert_eq!((h.projective_dimension, h.degree, h.codim), (3, 1, 4));
    }

    #[test]
    fn complete_intersection_of_squares() {
        let gens: Vec<Monomial> = (0..4).map(|i| Monomial::var_pow(i, 2)).collect();
        let h = HilbertData::from_numerator(monomial_numerator(&gens), 8);
        assert_eq!(h.numerator, vec![1, 0, -4, 0, 6, 0, -4, 0, 1]);
        assert_eq!((h.projective_dimension, h.degree), (3, 16));
        assert_eq!(h.hilbert_function(2), 32);
    }

    #[test]
    fn non_trivial_pivots() {
        // (x0*x1, x0*x2, x1*x2): three coordinate points in P^2
        let gens = [m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])];
        let h = HilbertData::from_numerator(monomial_numerator(&gens), 3);
        assert_eq!((h.projective_dimension, h.degree), (0, 3));
        assert_eq!(h.hilbert_function(5), 3);
    }

    #[test]
    fn unit_and_artinian() {
        let h = HilbertData::from_numerator(monomial_numerator(&[Monomial::ONE]), 4);
        assert!(h.is_unit());
        assert_eq!(h.projective_dimension, -1);
        let gens: Vec<Monomial> = (0..2).map(Monomial::var).collect();
        let h = HilbertData::from_numerator(monomial_numerator(&gens), 2);
        assert_eq!((h.projective_dimension, h.degree), (-1, 1));
    }

    #[test]
    fn riemann_roch_values() {
        for d in 14..=20 {
            assert_eq!(rr_expected_h0(d, 1).unwrap(), 8);
            assert_eq!(rr_expected_h0(d, 2).unwrap(), d + 16);
        }
        assert_eq!(rr_expected_h0(20, 2).unwrap(), 36);
        assert_eq!(rr_expected_h0(17, 2).unwrap(), 33);
        assert!(rr_expected_h0(13, 1).is_err());
    }
}
