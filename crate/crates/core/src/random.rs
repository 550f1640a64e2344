//! Seeded randomness. Every random draw in the crate goes through [`Rng`], a
//! ChaCha stream that is identical on every platform for a given seed.

use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Monomial, PolyRing, Polynomial};
use crate::linalg::Matrix;

/// Deterministic random source.
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Independent child stream, for reproducible sub-computations.
    pub fn fork(&mut self, label: u64) -> Rng {
        let s: u64 = self.0.gen();
        Rng::new(s ^ label.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// Uniform element of F_p.
    pub fn scalar(&mut self, p: u32) -> u32 {
        self.0.gen_range(0..p)
    }

    /// Uniform nonzero element of F_p.
    pub fn nonzero_scalar(&mut self, p: u32) -> u32 {
        self.0.gen_range(1..p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.gen()
    }

    /// Uniformly random form of degree `d` in the first `nvars` variables
    /// (standard grading).
    pub fn form_in(&mut self, ring: &Arc<PolyRing>, nvars: usize, d: u32) -> Polynomial {
        let p = ring.characteristic();
        let terms = Monomial::all_of_degree(nvars, d)
            .into_iter()
            .map(|m| (m, self.scalar(p)))
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    pub fn form(&mut self, ring: &Arc<PolyRing>, d: u32) -> Polynomial {
        self.form_in(ring, ring.nvars(), d)
    }

    /// Random invertible linear change of coordinates: images of the
    /// variables under the substitution and under its inverse.
    pub fn linear_change(&mut self, ring: &Arc<PolyRing>) -> (Vec<Polynomial>, Vec<Polynomial>) {
        let n = ring.nvars();
        let f = ring.field();
        loop {
            let mut a = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, self.scalar(f.characteristic()));
                }
            }
            let Some(inv) = a.inverse(f) else { continue };
            let images = |m: &Matrix| -> Vec<Polynomial> {
                (0..n)
                    .map(|i| {
                        let terms = (0..n).map(|j| (Monomial::var(j), m.get(i, j))).collect();
                        Polynomial::from_terms(ring, terms)
                    })
                    .collect()
            };
            return (images(&a), images(&inv));
        }
    }

    /// Random F_p-combination of the given polynomials.
    pub fn combination(&mut self, ring: &Arc<PolyRing>, polys: &[Polynomial]) -> Polynomial {
        let p = ring.characteristic();
        let mut acc = Polynomial::zero(ring);
        for f in polys {
            acc = acc.combine(f, self.scalar(p));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let r = PolyRing::p7();
        let a = Rng::new(7).form(&r, 2);
        let b = Rng::new(7).form(&r, 2);
        assert_eq!(a, b);
        assert_ne!(a, Rng::new(8).form(&r, 2));
        assert!(a.is_homogeneous() && a.degree() == Some(2));
    }

    #[test]
    fn linear_change_round_trips() {
        let r = PolyRing::p7();
        let (there, back) = Rng::new(3).linear_change(&r);
        let f = Rng::new(4).form(&r, 3);
        let g = f.substitute(&there).unwrap().substitute(&back).unwrap();
        assert_eq!(f, g);
    }
}
