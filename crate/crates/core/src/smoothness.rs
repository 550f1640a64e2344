//! Singular loci from Jacobian minors.
//!
//! A variety `X = V(I)` of codimension `c` is smooth where its Jacobian
//! matrix has rank `c`, so `Sing X = V(I + c x c minors)`. Emptiness is
//! certified by finding a degree in which `I + minors` contains every
//! monomial. With random batches only some minors are used, which can only
//! make the computed locus larger: a non-empty answer is exact, an empty one
//! is a certificate.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{groebner_until_artinian, Budget};
use crate::hilbert::{monomial_numerator, HilbertData};
use crate::ideal::Ideal;
use crate::matrix::{subsets, PolyMatrix};
use crate::random::Rng;

/// Which Jacobian minors to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum MinorStrategy {
    FullMinors,
    RandomMinorBatch { batch: usize, cap: usize },
}

impl Default for MinorStrategy {
    fn default() -> Self {
        MinorStrategy::RandomMinorBatch { batch: 32, cap: 512 }
    }
}

impl MinorStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            MinorStrategy::FullMinors => "full-minors",
            MinorStrategy::RandomMinorBatch { .. } => "random-minor-batch",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularLocusReport {
    pub method: &'static str,
    #[serde(skip)]
    pub singular_ideal: Ideal,
    /// `-1` when the singular locus is empty.
    pub projective_dimension: i64,
    pub degree: Option<i64>,
    pub minors_used: usize,
    pub minors_available: usize,
    pub seed: u64,
    /// Projective dimension after each batch; non-increasing.
    pub dimension_trace: Vec<i64>,
}

impl SingularLocusReport {
    pub fn is_empty(&self) -> bool {
        self.projective_dimension < 0
    }
}

/// `(#generators) x n` matrix of partial derivatives.
pub fn jacobian(ideal: &Ideal) -> PolyMatrix {
    let ring = ideal.ring();
    let mut m = PolyMatrix::zeros(ring, ideal.len(), ring.nvars());
    for (i, g) in ideal.gens().iter().enumerate() {
        for j in 0..ring.nvars() {
            m.set(i, j, g.derivative(j));
        }
    }
    m
}

/// Computes `Sing V(I)` for `I` of height `codim`. Minors are added until the
/// projective dimension drops to `target` or below (use `-1` for a
/// smoothness check); the full strategy always uses every minor.
pub fn singular_locus(
    ideal: &Ideal,
    codim: usize,
    strategy: MinorStrategy,
    target: i64,
    seed: u64,
    budget: &Budget,
) -> Result<SingularLocusReport> {
    let ring = ideal.ring().clone();
    if !ring.is_standard_graded() {
        return Err(Error::Invalid("singular loci need a standard-graded ring".into()));
    }
    let mut rng = Rng::new(seed);
    let jac = match strategy {
        MinorStrategy::FullMinors => jacobian(ideal),
        MinorStrategy::RandomMinorBatch { .. } => {
            let j = jacobian(&Ideal::new(&ring, mix_within_degrees(ideal, &mut rng))?);
            let n = ring.nvars();
            let b = (0..n)
                .map(|_| (0..n).map(|_| Polynomial::constant(&ring, rng.scalar(ring.characteristic()) as i64)).collect())
                .collect();
            j.mul(&PolyMatrix::from_rows(&ring, b)?)?
        }
    };
    let rows = subsets(jac.nrows(), codim);
    let cols = subsets(jac.ncols(), codim);
    let available = rows.len() * cols.len();
    let mut order: Vec<usize> = (0..available).collect();
    let (batch, cap) = match strategy {
        MinorStrategy::FullMinors => (available.max(1), available),
        MinorStrategy::RandomMinorBatch { batch, cap } => {
            for k in (1..order.len()).rev() {
                let j = rng.below(k + 1);
                order.swap(k, j);
            }
            (batch.max(1), cap.min(available))
        }
    };
    let mut minors: Vec<Polynomial> = Vec::new();
    let mut used = 0usize;
    let mut trace = Vec::new();
    let mut last: Option<(i64, Option<i64>, Vec<Polynomial>)> = None;
    let mut cursor = 0usize;
    while cursor < cap {
        let end = (cursor + batch).min(cap);
        for &k in &order[cursor..end] {
            let (r, c) = (&rows[k / cols.len()], &cols[k % cols.len()]);
            let d = jac.submatrix(r, c).determinant()?;
            if !d.is_zero() {
                minors.push(d);
            }
        }
        used = end;
        cursor = end;
        let mut gens = ideal.gens().to_vec();
        gens.extend(minors.iter().cloned());
        let (dim, deg) = match evaluate(&ring, &gens, budget) {
            Ok(v) => v,
            Err(Error::BudgetExceeded { .. }) => {
                return Err(Error::SingularLocusBudget {
                    minors_used: used,
                    dimension: trace.last().copied(),
                })
            }
            Err(e) => return Err(e),
        };
        trace.push(dim);
        last = Some((dim, deg, gens));
        if dim <= target && !matches!(strategy, MinorStrategy::FullMinors) {
            break;
        }
    }
    let (dim, deg, gens) = match last {
        Some(v) => v,
        None => {
            // no minors at all: the locus is V(I) itself
            let h = ideal.hilbert_with(budget)?;
            (h.projective_dimension, Some(h.degree), ideal.gens().to_vec())
        }
    };
    let singular_ideal = if dim < 0 {
        Ideal::unit(&ring)
    } else {
        Ideal::new(&ring, gens)?.saturate_irrelevant(&mut rng, budget)?
    };
    Ok(SingularLocusReport {
        method: strategy.name(),
        singular_ideal,
        projective_dimension: dim,
        degree: (dim >= 0).then_some(deg).flatten(),
        minors_used: used,
        minors_available: available,
        seed,
        dimension_trace: trace,
    })
}

/// Random combinations of the generators within each degree. Sampled minors
/// of the mixed Jacobian reach rank conditions that need rows from several
/// blocks of a structured one, and by Cauchy–Binet they still lie in the
/// ideal of the original minors.
fn mix_within_degrees(ideal: &Ideal, rng: &mut Rng) -> Vec<Polynomial> {
    let ring = ideal.ring();
    let degs = ideal.degrees();
    let mut out = Vec::with_capacity(degs.len());
    let mut levels = degs.clone();
    levels.sort_unstable();
    levels.dedup();
    for d in levels {
        let group: Vec<Polynomial> = ideal.gens().iter().zip(&degs).filter(|(_, &e)| e == d).map(|(g, _)| g.clone()).collect();
        for _ in 0..group.len() {
            out.push(rng.combination(ring, &group));
        }
    }
    out
}

fn evaluate(ring: &Arc<PolyRing>, gens: &[Polynomial], budget: &Budget) -> Result<(i64, Option<i64>)> {
    let (gb, artinian) = groebner_until_artinian(ring, gens, None, budget)?;
    if artinian.is_some() {
        return Ok((-1, None));
    }
    let h = HilbertData::from_numerator(monomial_numerator(&gb.lead_monomials()), ring.nvars());
    Ok((h.projective_dimension, Some(h.degree)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_shape_and_euler_relation() {
        let r = PolyRing::p7();
        let mut rng = Rng::new(2);
        let gens: Vec<Polynomial> = (0..4).map(|_| rng.form(&r, 2)).collect();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let j = jacobian(&i);
        assert_eq!((j.nrows(), j.ncols()), (4, 8));
        let xs: Vec<Vec<Polynomial>> = (0..8).map(|k| vec![Polynomial::var(&r, k)]).collect();
        let x = PolyMatrix::from_rows(&r, xs).unwrap();
        let e = j.mul(&x).unwrap();
        for (k, g) in gens.iter().enumerate() {
            assert_eq!(e.get(k, 0), &g.scalar_mul(2));
        }
        let sq = Ideal::parse(&r, &["x0^2"]).unwrap();
        assert_eq!(jacobian(&sq).get(0, 0), &Polynomial::var(&r, 0).scalar_mul(2));
    }

    #[test]
    fn cone_is_singular_at_its_vertex() {
        let r = PolyRing::p7();
        let mut rng = Rng::new(5);
        let gens: Vec<Polynomial> = (0..4).map(|_| rng.form_in(&r, 7, 2)).collect();
        let i = Ideal::new(&r, gens).unwrap();
        let rep = singular_locus(&i, 4, MinorStrategy::FullMinors, -1, 1, &Budget::unlimited()).unwrap();
        assert_eq!(rep.projective_dimension, 0);
        assert_eq!(rep.minors_used, 70);
        // supported at the vertex only (with multiplicity)
        let vertex = Ideal::parse(&r, &["x0", "x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
        assert!(vertex.contains_ideal(&rep.singular_ideal).unwrap());
    }

    #[test]
    fn plane_curves() {
        let r = PolyRing::standard(3, 32003).unwrap();
        let nodal = Ideal::parse(&r, &["x1^2*x2 - x0^2*x2 - x0^3"]).unwrap();
        let rep = singular_locus(&nodal, 1, MinorStrategy::FullMinors, -1, 0, &Budget::unlimited()).unwrap();
        assert_eq!((rep.projective_dimension, rep.degree), (0, Some(1)));
        let smooth = Ideal::parse(&r, &["x0^3 + x1^3 + x2^3"]).unwrap();
        let rep = singular_locus(&smooth, 1, MinorStrategy::default(), -1, 0, &Budget::unlimited()).unwrap();
        assert!(rep.is_empty());
        assert!(rep.singular_ideal.is_unit().unwrap());
    }
}
