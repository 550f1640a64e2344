//! Graded free resolutions and Betti tables.
//!
//! [`free_resolution`] computes a Schreyer resolution in random coordinates,
//! prunes it to a minimal one and maps it back. [`artinian_betti`] computes
//! the same numbers independently through Koszul homology of an Artinian
//! reduction, and [`predict_link_betti`] does the mapping-cone bookkeeping
//! for linkage.

mod betti;
mod cone;
mod koszul;
mod minimize;
mod schreyer;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{groebner, Budget};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::random::Rng;

pub use betti::BettiTable;
pub use cone::{certify_ag_cy, predict_link_betti, predict_link_betti_cancelling, AgCertificate};
pub use koszul::artinian_betti;
pub use schreyer::MAX_RESOLUTION_VARS;

/// One differential `F_k -> F_{k-1}`: column `c` is the image of the
/// basis element of degree `col_degrees[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStep {
    pub matrix: PolyMatrix,
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
}

impl ResolutionStep {
    /// Entry `(r, c)` is zero or homogeneous of degree `col - row`.
    pub fn is_graded(&self) -> bool {
        (0..self.matrix.nrows()).all(|r| {
            (0..self.matrix.ncols()).all(|c| {
                let e = self.matrix.get(r, c);
                e.is_zero()
                    || (e.is_homogeneous() && e.degree().map(i64::from) == Some(self.col_degrees[c] - self.row_degrees[r]))
            })
        })
    }
}

/// A graded free resolution of `R/I`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Arc<PolyRing>,
    steps: Vec<ResolutionStep>,
    betti: BettiTable,
}

#[derive(Serialize)]
struct StepJson {
    rows: Vec<i64>,
    cols: Vec<i64>,
    entries: Vec<Vec<String>>,
}

impl Resolution {
    fn from_parts(ring: Arc<PolyRing>, maps: Vec<PolyMatrix>, degrees: Vec<Vec<i64>>, minimal: bool) -> Self {
        let mut betti = BettiTable::new(minimal);
        for (i, ds) in degrees.iter().enumerate() {
            for &d in ds {
                betti.add(i, d, 1);
            }
        }
        let steps = maps
            .into_iter()
            .enumerate()
            .map(|(k, m)| ResolutionStep {
                matrix: m,
                row_degrees: degrees[k].clone(),
                col_degrees: degrees[k + 1].clone(),
            })
            .filter(|s| !s.col_degrees.is_empty())
            .collect();
        Resolution { ring, steps, betti }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn steps(&self) -> &[ResolutionStep] {
        &self.steps
    }

    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn length(&self) -> usize {
        self.steps.len()
    }

    pub fn is_minimal(&self) -> bool {
        self.betti.is_minimal()
    }

    /// Checks gradedness and that consecutive differentials compose to zero.
    pub fn check_complex(&self) -> Result<()> {
        for (k, s) in self.steps.iter().enumerate() {
            if !s.is_graded() {
                return Err(Error::NotAResolution(format!("map {} is not graded", k + 1)));
            }
        }
        for (k, w) in self.steps.windows(2).enumerate() {
            if !w[0].matrix.mul(&w[1].matrix)?.is_zero() {
                return Err(Error::NotAResolution(format!("d{} * d{} is not zero", k + 1, k + 2)));
            }
        }
        Ok(())
    }

    /// Entries of the first differential, i.e. generators of the resolved
    /// ideal.
    pub fn generators(&self) -> Vec<Polynomial> {
        match self.steps.first() {
            Some(s) => s.matrix.row(0).to_vec(),
            None => Vec::new(),
        }
    }

    /// Whether the first differential generates `ideal`.
    pub fn presents(&self, ideal: &Ideal) -> Result<bool> {
        let j = Ideal::new(&self.ring, self.generators())?;
        j.equals(ideal)
    }

    /// Matrices as printed polynomials with their degrees.
    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<StepJson> = self
            .steps
            .iter()
            .map(|s| StepJson {
                rows: s.row_degrees.clone(),
                cols: s.col_degrees.clone(),
                entries: (0..s.matrix.nrows())
                    .map(|r| s.matrix.row(r).iter().map(|p| p.to_string()).collect())
                    .collect(),
            })
            .collect();
        serde_json::json!({ "betti": self.betti, "maps": steps })
    }
}

/// Schreyer resolution of `R/I` in random coordinates, not yet minimized.
/// The matrices are returned in the original coordinates.
pub fn schreyer_resolution(ideal: &Ideal, rng: &mut Rng, budget: &Budget) -> Result<Resolution> {
    let (maps, degrees, back) = generic_frame(ideal, rng, budget)?;
    let maps = map_back(maps, &back, ideal.ring())?;
    Ok(Resolution::from_parts(ideal.ring().clone(), maps, degrees, false))
}

/// Minimal graded free resolution of `R/I`.
pub fn free_resolution(ideal: &Ideal, rng: &mut Rng, budget: &Budget) -> Result<Resolution> {
    let (mut maps, mut degrees, back) = generic_frame(ideal, rng, budget)?;
    minimize::prune(&mut maps, &mut degrees);
    let maps = map_back(maps, &back, ideal.ring())?;
    Ok(Resolution::from_parts(ideal.ring().clone(), maps, degrees, true))
}

/// Prunes unit entries from any resolution; a minimal input is returned
/// unchanged.
pub fn minimize(res: &Resolution) -> Resolution {
    let mut maps: Vec<PolyMatrix> = res.steps.iter().map(|s| s.matrix.clone()).collect();
    let mut degrees: Vec<Vec<i64>> = vec![vec![0]];
    degrees.extend(res.steps.iter().map(|s| s.col_degrees.clone()));
    minimize::prune(&mut maps, &mut degrees);
    Resolution::from_parts(res.ring.clone(), maps, degrees, true)
}

type GenericFrame = (Vec<PolyMatrix>, Vec<Vec<i64>>, Vec<Polynomial>);

fn generic_frame(ideal: &Ideal, rng: &mut Rng, budget: &Budget) -> Result<GenericFrame> {
    let ring = ideal.ring();
    if !ring.is_standard_graded() {
        return Err(Error::Invalid("resolutions need a standard-graded ring".into()));
    }
    if ring.nvars() > MAX_RESOLUTION_VARS {
        return Err(Error::TooManyVariables(ring.nvars()));
    }
    let work = ring.with_order(MonomialOrder::Grevlex)?;
    let (there, back) = rng.linear_change(&work);
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.reorder(&work)?.substitute(&there))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner(&work, &gens, budget)?;
    if gb.is_unit() {
        return Ok((Vec::new(), vec![Vec::new()], back));
    }
    let f = schreyer::frame(&work, gb.polys(), budget)?;
    Ok((f.maps, f.degrees, back))
}

fn map_back(maps: Vec<PolyMatrix>, back: &[Polynomial], target: &Arc<PolyRing>) -> Result<Vec<PolyMatrix>> {
    maps.iter()
        .map(|m| {
            if m.entries().is_empty() {
                Ok(PolyMatrix::zeros(target, m.nrows(), m.ncols()))
            } else {
                m.map(|p| p.substitute(back)?.reorder(target))
            }
        })
        .collect::<Result<Vec<_>>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(ring: &Arc<PolyRing>, gens: &[&str]) -> (Ideal, Resolution) {
        let i = Ideal::parse(ring, gens).unwrap();
        let r = free_resolution(&i, &mut Rng::new(11), &Budget::unlimited()).unwrap();
        (i, r)
    }

    #[test]
    fn koszul_complex_of_a_linear_space() {
        let (i, r) = resolve(&PolyRing::p7(), &["x4", "x5", "x6", "x7"]);
        let expect = BettiTable::from_modules(&[&[(4, 1)], &[(6, 2)], &[(4, 3)], &[(1, 4)]], true);
        assert_eq!(r.betti(), &expect);
        r.check_complex().unwrap();
        assert!(r.presents(&i).unwrap());
        assert_eq!(minimize(&r).betti(), &expect);
    }

    #[test]
    fn twisted_cubic() {
        let ring = PolyRing::standard(4, 32003).unwrap();
        let (i, r) = resolve(&ring, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        assert_eq!(r.betti().summary(), "R <- 3R(-2) <- 2R(-3)");
        r.check_complex().unwrap();
        assert_eq!(r.betti().hilbert_numerator(), i.hilbert().unwrap().numerator);
        let k = artinian_betti(&i, &mut Rng::new(2), &Budget::unlimited()).unwrap();
        assert_eq!(&k, r.betti());
    }

    #[test]
    fn non_minimal_frame_minimizes() {
        let ring = PolyRing::standard(4, 32003).unwrap();
        let i = Ideal::parse(&ring, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2", "x0^2"]).unwrap();
        let s = schreyer_resolution(&i, &mut Rng::new(1), &Budget::unlimited()).unwrap();
        s.check_complex().unwrap();
        assert!(!s.is_minimal());
        let m = minimize(&s);
        m.check_complex().unwrap();
        assert!(m.presents(&i).unwrap());
        assert!(m.betti().dominated_by(s.betti()));
        assert_eq!(m.betti().hilbert_numerator(), s.betti().hilbert_numerator());
        let direct = free_resolution(&i, &mut Rng::new(9), &Budget::unlimited()).unwrap();
        assert!(m.betti().same_entries(direct.betti()));
    }

    #[test]
    fn non_cohen_macaulay_is_refused_by_the_oracle() {
        let ring = PolyRing::standard(4, 32003).unwrap();
        let (i, r) = resolve(&ring, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
        assert_eq!(r.length(), 3);
        assert!(artinian_betti(&i, &mut Rng::new(2), &Budget::unlimited()).is_err());
    }

    #[test]
    fn unit_ideal_has_empty_resolution() {
        let ring = PolyRing::standard(3, 101).unwrap();
        let (_, r) = resolve(&ring, &["x0 - x1", "x0^2", "x1^2", "x2"]);
        assert_eq!(r.length(), 4 - 1);
        let u = Ideal::unit(&ring);
        let r = free_resolution(&u, &mut Rng::new(1), &Budget::unlimited()).unwrap();
        assert_eq!(r.length(), 0);
        assert_eq!(r.betti().entries().count(), 0);
    }

    #[test]
    fn budget_stops_the_frame() {
        let ring = PolyRing::p7();
        let mut rng = Rng::new(4);
        let q: Vec<Polynomial> = (0..4).map(|_| rng.form(&ring, 2)).collect();
        let i = Ideal::new(&ring, q).unwrap();
        let e = free_resolution(&i, &mut rng, &Budget::pairs(3)).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }));
    }
}
