//! Identities behind the degree-19 construction through the quadro-quadric
//! Cremona transformation of P^8 centred on P^2 x P^2.
//!
//! Everything lives in `k[z11, ..., z33]`. The cofactor quadrics `y_ij`
//! (the minor of `Φ` complementary to `z_ij`) define the Cremona map; the
//! Pfaffian fivefold `Θ` has a first row of random combinations of them.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::families::skew5;
use crate::groebner::Budget;
use crate::ideal::Ideal;
use crate::matrix::{subsets, PolyMatrix};
use crate::random::Rng;
use crate::smoothness::{singular_locus, MinorStrategy};

const Z_NAMES: [&str; 9] = ["z11", "z12", "z13", "z21", "z22", "z23", "z31", "z32", "z33"];

/// The generic 3x3 matrix `Φ`, its cofactor quadrics and the Segre ideal.
#[derive(Clone, Debug)]
pub struct SegreData {
    pub ring: Arc<PolyRing>,
    pub phi: PolyMatrix,
    /// `y[i][j]`: the minor of `Φ` with row `i` and column `j` deleted.
    pub y: Vec<Vec<Polynomial>>,
    pub ideal: Ideal,
}

impl SegreData {
    pub fn new(p: u32) -> Result<Self> {
        let ring = PolyRing::new(&Z_NAMES, p, MonomialOrder::Grevlex)?;
        let phi = PolyMatrix::from_rows(&ring, (0..3).map(|i| (0..3).map(|j| Polynomial::var(&ring, 3 * i + j)).collect()).collect())?;
        let mut y = Vec::new();
        for i in 0..3 {
            let mut row = Vec::new();
            for j in 0..3 {
                let rs: Vec<usize> = (0..3).filter(|&r| r != i).collect();
                let cs: Vec<usize> = (0..3).filter(|&c| c != j).collect();
                row.push(phi.submatrix(&rs, &cs).determinant()?);
            }
            y.push(row);
        }
        let ideal = Ideal::new(&ring, phi.minors(2)?)?;
        Ok(SegreData { ring, phi, y, ideal })
    }

    /// `z_ij` with 1-based indices.
    pub fn z(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, 3 * (i - 1) + (j - 1))
    }

    /// `y_ij` with 1-based indices.
    pub fn y(&self, i: usize, j: usize) -> Polynomial {
        self.y[i - 1][j - 1].clone()
    }

    fn cofactor_combination(&self, coeffs: &[u32; 9]) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for (k, &c) in coeffs.iter().enumerate() {
            acc = acc.combine(&self.y[k / 3][k % 3], c);
        }
        acc
    }
}

/// The Pfaffian matrix `M` with first row `A, B, C, D` and its Pfaffians.
#[derive(Clone, Debug)]
pub struct PfaffianData {
    pub segre: SegreData,
    /// Coefficients of `A, B, C, D` on `y11, y12, ..., y33`.
    pub coefficients: [[u32; 9]; 4],
    pub m: PolyMatrix,
    /// `pfaffians[k]`: Pfaffian of `M` with row and column `k` deleted.
    pub pfaffians: Vec<Polynomial>,
}

impl PfaffianData {
    pub fn new(segre: SegreData, coefficients: [[u32; 9]; 4]) -> Result<Self> {
        let row: Vec<Polynomial> = coefficients.iter().map(|c| segre.cofactor_combination(c)).collect();
        let z = |i, j| segre.z(i, j);
        let block = [z(3, 1), z(2, 1), &z(2, 2) - &z(3, 3), z(1, 1), z(1, 2), z(1, 3)];
        let m = skew5(&segre.ring, &row, &block);
        let mut pfaffians = m.principal_pfaffians(4)?;
        // subsets come in lexicographic order, i.e. deleting 4, 3, 2, 1, 0
        pfaffians.reverse();
        Ok(PfaffianData { segre, coefficients, m, pfaffians })
    }

    pub fn random(p: u32, rng: &mut Rng) -> Result<Self> {
        let mut c = [[0u32; 9]; 4];
        for row in c.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.scalar(p);
            }
        }
        PfaffianData::new(SegreData::new(p)?, c)
    }

    pub fn quadric_row(&self) -> Vec<Polynomial> {
        (1..5).map(|j| self.m.get(0, j).clone()).collect()
    }

    /// The Pfaffian fivefold in P^8.
    pub fn theta(&self) -> Result<Ideal> {
        Ideal::new(&self.segre.ring, self.pfaffians.clone())
    }

    /// `N` with first two rows of cofactors and last row `A, B, C, D`.
    pub fn n_matrix(&self) -> Result<PolyMatrix> {
        let s = &self.segre;
        PolyMatrix::from_rows(
            &s.ring,
            vec![
                vec![s.y(1, 2), s.y(2, 2), s.y(3, 2), s.y(3, 1)],
                vec![s.y(1, 3), s.y(2, 3), s.y(3, 3), s.y(2, 1)],
                self.quadric_row(),
            ],
        )
    }
}

/// `adj(adj Φ) = det(Φ) Φ`.
pub fn verify_adjugate_identity(segre: &SegreData) -> Result<bool> {
    let aa = segre.phi.adjugate()?.adjugate()?;
    let det = segre.phi.determinant()?;
    Ok(aa == segre.phi.scale(&det))
}

/// `y22 - y33 + Pf_1 = 0`.
pub fn verify_hyperplane_identity(pf: &PfaffianData) -> bool {
    let s = &pf.segre;
    (&(&s.y(2, 2) - &s.y(3, 3)) + &pf.pfaffians[0]).is_zero()
}

/// A 3x3 minor of `N` matched with a Pfaffian of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorMatch {
    /// Columns of `N` (0-based).
    pub columns: Vec<usize>,
    /// Deleted index of the Pfaffian (0-based).
    pub pfaffian: usize,
    pub sign: i8,
}

/// For every 3x3 minor `μ` of `N` finds `k` and `±` with
/// `μ ∓ Pf_k det Φ` divisible by `Pf_1`.
pub fn verify_minor_pfaffian_identity(pf: &PfaffianData) -> Result<Vec<MinorMatch>> {
    let n = pf.n_matrix()?;
    let det = pf.segre.phi.determinant()?;
    let modulus = Ideal::new(&pf.segre.ring, vec![pf.pfaffians[0].clone()])?;
    let gb = modulus.groebner()?;
    let mut out = Vec::new();
    for cols in subsets(4, 3) {
        let mu = n.submatrix(&[0, 1, 2], &cols).determinant()?;
        let mut found = None;
        'search: for (k, pk) in pf.pfaffians.iter().enumerate() {
            let prod = pk * &det;
            for sign in [1i8, -1] {
                let diff = if sign == 1 { &mu - &prod } else { &mu + &prod };
                if gb.normal_form(&diff).is_zero() {
                    found = Some(MinorMatch { columns: cols.clone(), pfaffian: k, sign });
                    break 'search;
                }
            }
        }
        match found {
            Some(m) => out.push(m),
            None => return Err(Error::NoMatching(format!("minor on columns {cols:?}"))),
        }
    }
    Ok(out)
}

/// Dimension and degree of a singular locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocusSummary {
    pub dimension: i64,
    pub degree: Option<i64>,
    /// Degree of the part of the locus on the Segre section, when checked.
    pub on_segre: Option<i64>,
}

/// A codimension-2 linear section of `Θ` and of `P^2 x P^2`, by substituting
/// random linear forms in the other variables for `z32` and `z33`.
pub fn generic_section(pf: &PfaffianData, rng: &mut Rng) -> Result<(Ideal, Ideal)> {
    let s = &pf.segre;
    let small = PolyRing::new(&Z_NAMES[..7], s.ring.characteristic(), MonomialOrder::Grevlex)?;
    let mut images: Vec<Polynomial> = (0..7).map(|i| Polynomial::var(&small, i)).collect();
    images.push(rng.form(&small, 1));
    images.push(rng.form(&small, 1));
    section_by(pf, &images)
}

fn section_by(pf: &PfaffianData, images: &[Polynomial]) -> Result<(Ideal, Ideal)> {
    Ok((pf.theta()?.substitute(images)?, pf.segre.ideal.substitute(images)?))
}

/// Singular locus of the Pfaffian threefold `Y = Θ ∩ P^6`, from all 3x3
/// Jacobian minors, and the degree of its intersection with the del Pezzo
/// section of the Segre variety.
pub fn nodal_count_y13(seed: u64, p: u32, budget: &Budget) -> Result<LocusSummary> {
    let mut rng = Rng::new(seed);
    let pf = PfaffianData::random(p, &mut rng)?;
    let (y, s6) = generic_section(&pf, &mut rng)?;
    locus_on_segre(&y, &s6, 3, &mut rng, budget)
}

/// As [`nodal_count_y13`] for the section `z32 = z33 = 0` of `Θ`.
pub fn nodal_count_special(seed: u64, p: u32, budget: &Budget) -> Result<LocusSummary> {
    let mut rng = Rng::new(seed);
    let pf = PfaffianData::random(p, &mut rng)?;
    let small = PolyRing::new(&Z_NAMES[..7], p, MonomialOrder::Grevlex)?;
    let mut images: Vec<Polynomial> = (0..7).map(|i| Polynomial::var(&small, i)).collect();
    images.push(Polynomial::zero(&small));
    images.push(Polynomial::zero(&small));
    let (y, s6) = section_by(&pf, &images)?;
    locus_on_segre(&y, &s6, 3, &mut rng, budget)
}

/// Singular locus of `Θ` itself in P^8.
pub fn theta_singular_surface(seed: u64, p: u32, budget: &Budget) -> Result<LocusSummary> {
    let mut rng = Rng::new(seed);
    let pf = PfaffianData::random(p, &mut rng)?;
    let theta = pf.theta()?;
    let segre = pf.segre.ideal.clone();
    locus_on_segre(&theta, &segre, 3, &mut rng, budget)
}

fn locus_on_segre(x: &Ideal, segre: &Ideal, codim: usize, rng: &mut Rng, budget: &Budget) -> Result<LocusSummary> {
    let rep = singular_locus(x, codim, MinorStrategy::FullMinors, -1, rng.next_u64(), budget)?;
    if rep.is_empty() {
        return Ok(LocusSummary { dimension: -1, degree: None, on_segre: None });
    }
    let meet = rep.singular_ideal.sum(segre)?.saturate_irrelevant(rng, budget)?;
    let h = meet.hilbert_with(budget)?;
    let on_segre = (h.projective_dimension == rep.projective_dimension).then_some(h.degree);
    Ok(LocusSummary { dimension: rep.projective_dimension, degree: rep.degree, on_segre: on_segre.or(Some(0)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactors_lie_on_the_segre_variety() {
        let s = SegreData::new(32003).unwrap();
        for row in &s.y {
            for y in row {
                assert!(s.ideal.contains(y).unwrap());
            }
        }
        assert!(verify_adjugate_identity(&s).unwrap());
    }

    #[test]
    fn first_pfaffian() {
        let mut rng = Rng::new(4);
        let pf = PfaffianData::random(32003, &mut rng).unwrap();
        let z = |i, j| pf.segre.z(i, j);
        let expect = &(&(&z(3, 1) * &z(1, 3)) - &(&z(1, 1) * &z(3, 3))) + &(&(&z(1, 1) * &z(2, 2)) - &(&z(1, 2) * &z(2, 1)));
        assert_eq!(pf.pfaffians[0], expect);
        assert!(verify_hyperplane_identity(&pf));
    }
}
