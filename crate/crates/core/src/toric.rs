//! Intersection numbers on two-parameter toric ambients.
//!
//! The Chow rings used here are generated by two divisor classes `h` and
//! `η` with `h^2 = 0`, so every class of degree `d` is `a η^d + b h η^(d-1)`
//! and the top degree is determined by the two numbers `h η^(n-1)` and
//! `η^n`. All arithmetic is exact.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{int, rat, to_integer};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::families::expected;

/// An ambient toric variety with Picard rank two and `h^2 = 0`.
#[derive(Clone, Debug)]
pub struct ToricAmbient {
    pub name: &'static str,
    pub dim: usize,
    /// `(h, η)` class of each homogeneous coordinate.
    pub coordinates: Vec<(i64, i64)>,
    /// `h η^(dim-1)`.
    pub h_eta: Rational,
    /// `η^dim`.
    pub eta_top: Rational,
    /// Hyperplane class of the embedding.
    pub hyperplane: (i64, i64),
}

impl ToricAmbient {
    /// P^1 x P^3 with `h` and `η` the pullbacks of the hyperplanes:
    /// `h η^3 = 1` and `η^4 = 0`; embedded by `h + η`.
    pub fn p1xp3() -> Self {
        ToricAmbient {
            name: "P1xP3",
            dim: 4,
            coordinates: vec![(1, 0), (1, 0), (0, 1), (0, 1), (0, 1), (0, 1)],
            h_eta: int(1),
            eta_top: int(0),
            hyperplane: (1, 1),
        }
    }

    /// `P(2O + 3O(-1))` over P^1, coordinates `t1 t2 a1 a2 b1 b2 b3`. A fibre
    /// is a P^4 on which `η` is the hyperplane, so `h η^4 = 1`; the relation
    /// `a1 a2 b1 b2 b3 = 0` gives `η^2 (η - h)^3 = η^5 - 3 h η^4 = 0`.
    pub fn c_scroll() -> Self {
        ToricAmbient {
            name: "C-scroll",
            dim: 5,
            coordinates: vec![(1, 0), (1, 0), (0, 1), (0, 1), (-1, 1), (-1, 1), (-1, 1)],
            h_eta: int(1),
            eta_top: int(3),
            hyperplane: (0, 1),
        }
    }

    /// The P(1^5,2)-bundle over P^1 with coordinates `t1 t2 a1 a2 b1 b2 b3 c`.
    pub fn f_scroll() -> Self {
        ToricAmbient {
            name: "F-scroll",
            dim: 6,
            coordinates: vec![(1, 0), (1, 0), (0, 1), (0, 1), (-1, 1), (-1, 1), (-1, 1), (-1, 2)],
            h_eta: rat(1, 2),
            eta_top: rat(7, 4),
            hyperplane: (0, 1),
        }
    }

    pub fn one(&self) -> ChowClass {
        let mut c = ChowClass::zero(self.dim);
        c.parts[0].0 = int(1);
        c
    }

    /// The divisor `a h + b η`.
    pub fn divisor(&self, (a, b): (i64, i64)) -> ChowClass {
        let mut c = ChowClass::zero(self.dim);
        c.parts[1] = (int(b), int(a));
        c
    }

    /// Degree of the top-dimensional part.
    pub fn evaluate(&self, c: &ChowClass) -> Rational {
        let (a, b) = &c.parts[self.dim];
        a * &self.eta_top + b * &self.h_eta
    }
}

/// A mixed-degree class: `parts[d] = (a, b)` stands for `a η^d + b h η^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    parts: Vec<(Rational, Rational)>,
}

impl ChowClass {
    pub fn zero(dim: usize) -> Self {
        ChowClass { parts: vec![(Rational::zero(), Rational::zero()); dim + 1] }
    }

    pub fn dim(&self) -> usize {
        self.parts.len() - 1
    }

    /// `(η coefficient, h η^(d-1) coefficient)` in degree `d`.
    pub fn part(&self, d: usize) -> (&Rational, &Rational) {
        let (a, b) = &self.parts[d];
        (a, b)
    }

    /// The degree-`d` component alone.
    pub fn graded(&self, d: usize) -> ChowClass {
        let mut c = ChowClass::zero(self.dim());
        c.parts[d] = self.parts[d].clone();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|(a, b)| a.is_zero() && b.is_zero())
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        let parts = self.parts.iter().zip(&other.parts).map(|((a, b), (c, d))| (a + c, b + d)).collect();
        ChowClass { parts }
    }

    pub fn scale(&self, k: &Rational) -> ChowClass {
        ChowClass { parts: self.parts.iter().map(|(a, b)| (a * k, b * k)).collect() }
    }

    /// Product truncated above the ambient dimension; `h^2` terms vanish.
    pub fn mul(&self, other: &ChowClass) -> ChowClass {
        let n = self.dim();
        let mut out = ChowClass::zero(n);
        for (i, (a, b)) in self.parts.iter().enumerate() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            for (j, (c, d)) in other.parts.iter().enumerate().take(n + 1 - i) {
                let slot = &mut out.parts[i + j];
                slot.0 += a * c;
                slot.1 += a * d + b * c;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        let mut acc = ChowClass::zero(self.dim());
        acc.parts[0].0 = int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a class with constant term 1, by the geometric series.
    pub fn inverse(&self) -> Result<ChowClass> {
        if !self.parts[0].0.is_one() {
            return Err(Error::Invalid("only classes with constant term 1 are inverted".into()));
        }
        let mut nil = self.clone();
        nil.parts[0].0 = Rational::zero();
        let minus = nil.scale(&int(-1));
        let mut acc = ChowClass::zero(self.dim());
        acc.parts[0].0 = int(1);
        let mut term = acc.clone();
        for _ in 0..self.dim() {
            term = term.mul(&minus);
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, (a, b)) in self.parts.iter().enumerate() {
            if !a.is_zero() {
                terms.push(if d == 0 { format!("{a}") } else { format!("{a}*eta^{d}") });
            }
            if !b.is_zero() {
                terms.push(format!("{b}*h*eta^{}", d - 1));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A total Chern class `1 + c_1 t + c_2 t^2 + ...`; the power of `t` is the
/// degree of its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernSeries(pub ChowClass);

impl ChernSeries {
    pub fn coefficient(&self, k: usize) -> ChowClass {
        self.0.graded(k)
    }
}

/// `Π (1 + D_i t)` over the coordinate divisors.
pub fn tangent_chern(ambient: &ToricAmbient) -> ChernSeries {
    let mut acc = ambient.one();
    for &d in &ambient.coordinates {
        acc = acc.mul(&ambient.one().add(&ambient.divisor(d)));
    }
    ChernSeries(acc)
}

/// Invariants of a complete intersection threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CiInvariants {
    pub degree: i64,
    pub euler: i64,
    pub c2_dot_a: i64,
}

/// Chern classes of a complete intersection of the given divisors, via
/// `c(T_X) = c(T_ambient) / Π (1 + C_i)`, and its degree, Euler number and
/// `c_2 · A`.
pub fn ci_chern_and_euler(ambient: &ToricAmbient, classes: &[(i64, i64)]) -> Result<(ChernSeries, CiInvariants)> {
    if ambient.dim < classes.len() || ambient.dim - classes.len() != 3 {
        return Err(Error::Invalid(format!(
            "{} divisors in the {}-dimensional {} do not cut a threefold",
            classes.len(),
            ambient.dim,
            ambient.name
        )));
    }
    let mut normal = ambient.one();
    let mut fundamental = ambient.one();
    for &c in classes {
        let d = ambient.divisor(c);
        normal = normal.mul(&ambient.one().add(&d));
        fundamental = fundamental.mul(&d);
    }
    let tx = tangent_chern(ambient).0.mul(&normal.inverse()?);
    let a = ambient.divisor(ambient.hyperplane);
    let degree = to_integer(&ambient.evaluate(&a.pow(3).mul(&fundamental)), "degree")?;
    let euler = to_integer(&ambient.evaluate(&tx.graded(3).mul(&fundamental)), "Euler number")?;
    let c2_dot_a = to_integer(&ambient.evaluate(&tx.graded(2).mul(&a).mul(&fundamental)), "c2.A")?;
    Ok((ChernSeries(tx), CiInvariants { degree, euler, c2_dot_a }))
}

/// Class of the locus where an `f x e` matrix (`e >= f`) has rank below `f`,
/// row `i` having entries in the line bundle `rows[i]`:
/// `det(c_{1+j-i})` of size `e - f + 1` in the Chern classes of `⊕ rows`.
pub fn maximal_minors_class(ambient: &ToricAmbient, rows: &[(i64, i64)], ncols: usize) -> Result<ChowClass> {
    if ncols < rows.len() {
        return Err(Error::Invalid("need at least as many columns as rows".into()));
    }
    let mut c = ambient.one();
    for &r in rows {
        c = c.mul(&ambient.one().add(&ambient.divisor(r)));
    }
    let size = ncols - rows.len() + 1;
    let entry = |i: usize, j: usize| -> ChowClass {
        let k = 1 + j as i64 - i as i64;
        if k < 0 || k as usize > ambient.dim {
            ChowClass::zero(ambient.dim)
        } else {
            c.graded(k as usize)
        }
    };
    let m: Vec<Vec<ChowClass>> = (0..size).map(|i| (0..size).map(|j| entry(i, j)).collect()).collect();
    Ok(class_determinant(&m, ambient.dim))
}

fn class_determinant(m: &[Vec<ChowClass>], dim: usize) -> ChowClass {
    match m.len() {
        0 => {
            let mut one = ChowClass::zero(dim);
            one.parts[0].0 = int(1);
            one
        }
        1 => m[0][0].clone(),
        n => {
            let mut acc = ChowClass::zero(dim);
            for j in 0..n {
                let minor: Vec<Vec<ChowClass>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| c.clone()).collect()).collect();
                let t = m[0][j].mul(&class_determinant(&minor, dim));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.add(&t.scale(&int(-1))) };
            }
            acc
        }
    }
}

/// `h^{1,2} = h^{1,1} - e/2` for a Calabi–Yau threefold.
pub fn hodge_from_euler(euler: i64, h11: i64) -> Result<i64> {
    if euler % 2 != 0 {
        return Err(Error::Invalid(format!("odd Euler number {euler}")));
    }
    Ok(h11 - euler / 2)
}

/// Riemann–Roch for a Calabi–Yau threefold with `h^0(A) = 8`:
/// `2 A^3 + c_2 · A = 96`.
pub fn c2_consistency(degree: i64, c2_dot_a: i64) -> bool {
    2 * degree + c2_dot_a == 96
}

/// Hodge data of the families with a toric complete intersection model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeReport {
    pub family: u32,
    pub ambient: &'static str,
    pub euler: i64,
    pub h11: i64,
    pub h12: i64,
    pub degree: i64,
    #[serde(rename = "c2A")]
    pub c2_a: i64,
    pub consistency: bool,
}

/// Toric model of a family: ambient and complete intersection classes.
pub fn toric_model(family: u32) -> Option<(ToricAmbient, Vec<(i64, i64)>)> {
    match family {
        1 => Some((ToricAmbient::p1xp3(), vec![(2, 4)])),
        6 => Some((ToricAmbient::f_scroll(), vec![(0, 2), (0, 2), (-2, 3)])),
        _ => None,
    }
}

pub fn hodge(family: u32) -> Result<HodgeReport> {
    let spec = expected(family)?;
    let (ambient, classes) = toric_model(family)
        .ok_or_else(|| Error::Invalid(format!("family {family} has no toric complete intersection model")))?;
    let (_, inv) = ci_chern_and_euler(&ambient, &classes)?;
    let h12 = hodge_from_euler(inv.euler, spec.h11)?;
    Ok(HodgeReport {
        family,
        ambient: ambient.name,
        euler: inv.euler,
        h11: spec.h11,
        h12,
        degree: inv.degree,
        c2_a: inv.c2_dot_a,
        consistency: c2_consistency(inv.degree, inv.c2_dot_a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_squared_vanishes() {
        let f = ToricAmbient::f_scroll();
        let h = f.divisor((1, 0));
        assert!(h.mul(&h).is_zero());
        assert_eq!(f.evaluate(&h.mul(&f.divisor((0, 1)).pow(5))), rat(1, 2));
    }

    #[test]
    fn f_scroll_degree_and_euler() {
        let f = ToricAmbient::f_scroll();
        let (tx, inv) = ci_chern_and_euler(&f, &[(0, 2), (0, 2), (-2, 3)]).unwrap();
        assert_eq!(inv.degree, 17);
        assert_eq!(inv.euler, -104);
        // c_3 · [X] = 212 h η^5 - 120 η^6
        let x = f.divisor((0, 2)).pow(2).mul(&f.divisor((-2, 3)));
        let (a, b) = {
            let c3 = tx.coefficient(3).mul(&x);
            let (a, b) = c3.part(6);
            (a.clone(), b.clone())
        };
        assert_eq!((a, b), (int(-120), int(212)));
    }

    #[test]
    fn c_scroll_relation() {
        let c = ToricAmbient::c_scroll();
        let eta = c.divisor((0, 1));
        let rel = eta.pow(2).mul(&c.divisor((-1, 1)).pow(3));
        assert_eq!(c.evaluate(&rel), int(0));
    }

    #[test]
    fn inverse_round_trips() {
        let p = ToricAmbient::p1xp3();
        let s = p.one().add(&p.divisor((2, 4)));
        assert_eq!(s.mul(&s.inverse().unwrap()), p.one());
    }

    #[test]
    fn hodge_of_toric_families() {
        let one = hodge(1).unwrap();
        assert_eq!((one.euler, one.h12, one.degree, one.c2_a), (-168, 86, 14, 68));
        let six = hodge(6).unwrap();
        assert_eq!((six.euler, six.h12, six.degree, six.c2_a), (-104, 54, 17, 62));
        assert!(one.consistency && six.consistency);
        assert!(hodge(3).is_err());
    }

    #[test]
    fn determinantal_threefold_in_c_scroll() {
        let c = ToricAmbient::c_scroll();
        let x = maximal_minors_class(&c, &[(0, 2), (-1, 1)], 3).unwrap();
        assert_eq!(c.evaluate(&c.divisor((0, 1)).pow(3).mul(&x)), int(17));
    }
}
