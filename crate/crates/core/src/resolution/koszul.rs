//! Betti numbers through an Artinian reduction.
//!
//! If `R/I` is Cohen–Macaulay of codimension `c`, then after a generic change
//! of coordinates the last `n - c` variables form a regular sequence, and
//! `R/I` has the same graded Betti numbers as the finite-length algebra
//! `A = k[y_0..y_{c-1}] / J` obtained by setting them to zero. Those are the
//! dimensions of the Koszul homology `H_i(y; A)_j`, which is plain linear
//! algebra on `A`. The regular-sequence condition is certified by comparing
//! Hilbert series: it holds exactly when `HS(R/I) (1 - t)^(n - c) = HS(A)`.

use std::collections::HashMap;

use super::BettiTable;
use crate::algebra::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{groebner, Budget};
use crate::hilbert::{monomial_numerator, HilbertData};
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::matrix::subsets;
use crate::random::Rng;

/// Minimal graded Betti numbers of `R/I` for a Cohen–Macaulay quotient.
/// Fails with [`Error::Invalid`] when the Artinian reduction does not
/// preserve the Hilbert series (not Cohen–Macaulay, or unlucky coordinates).
pub fn artinian_betti(ideal: &Ideal, rng: &mut Rng, budget: &Budget) -> Result<BettiTable> {
    let ring = ideal.ring();
    if !ring.is_standard_graded() {
        return Err(Error::Invalid("Betti numbers need a standard-graded ring".into()));
    }
    let h = ideal.hilbert_with(budget)?;
    if h.is_unit() {
        return Ok(BettiTable::new(true));
    }
    let c = h.codim;
    let small = PolyRing::standard(c, ring.characteristic())?;
    let (there, _) = rng.linear_change(ring);
    let images: Vec<Polynomial> = there
        .iter()
        .map(|im| {
            let terms = im
                .terms()
                .iter()
                .filter_map(|(m, a)| {
                    let v = (0..c).find(|&j| m.exp(j) == 1)?;
                    Some((Monomial::var(v), *a))
                })
                .collect();
            Polynomial::from_terms(&small, terms)
        })
        .collect();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    let gb = groebner(&small, &gens, budget)?;
    let leads = gb.lead_monomials();
    let reduced = HilbertData::from_numerator(monomial_numerator(&leads), c);
    if reduced.numerator != h.numerator {
        return Err(Error::Invalid(
            "Artinian reduction changes the Hilbert series (quotient not Cohen-Macaulay?)".into(),
        ));
    }

    // Standard monomials of A by degree.
    let mut basis: Vec<Vec<Monomial>> = Vec::new();
    for t in 0.. {
        let b: Vec<Monomial> = Monomial::all_of_degree(c, t)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        if b.is_empty() {
            break;
        }
        basis.push(b);
    }
    let index: Vec<HashMap<Monomial, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
        .collect();
    // mult[t][s][k] = coordinates of y_s * basis[t][k] in A_{t+1}
    let top = basis.len();
    let mut mult: Vec<Vec<Vec<Vec<(usize, u32)>>>> = Vec::with_capacity(top);
    for t in 0..top {
        let mut per_var = Vec::with_capacity(c);
        for s in 0..c {
            let col = basis[t]
                .iter()
                .map(|m| {
                    if t + 1 >= top {
                        return Vec::new();
                    }
                    let nf = gb.normal_form(&Polynomial::term(&small, m.mul(&Monomial::var(s)), 1));
                    nf.terms().iter().map(|(mm, a)| (index[t + 1][mm], *a)).collect()
                })
                .collect();
            per_var.push(col);
        }
        mult.push(per_var);
    }

    let f = small.field();
    let wedge: Vec<Vec<Vec<usize>>> = (0..=c).map(|i| subsets(c, i)).collect();
    let wedge_index: Vec<HashMap<Vec<usize>, usize>> = wedge
        .iter()
        .map(|w| w.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    // rank of d_i : A_t (x) L^i -> A_{t+1} (x) L^{i-1}
    let rank = |i: usize, t: usize| -> usize {
        if i == 0 || i > c || t + 1 >= top {
            return 0;
        }
        let (src, dst) = (&wedge[i], &wedge[i - 1]);
        let mut m = Matrix::zeros(basis[t + 1].len() * dst.len(), basis[t].len() * src.len());
        for (si, s) in src.iter().enumerate() {
            for k in 0..basis[t].len() {
                let col = si * basis[t].len() + k;
                for (pos, &v) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != v).collect();
                    let di = wedge_index[i - 1][&rest];
                    let sign_neg = pos % 2 == 1;
                    for &(row_k, a) in &mult[t][v][k] {
                        let row = di * basis[t + 1].len() + row_k;
                        let val = if sign_neg { f.neg(a) } else { a };
                        m.set(row, col, f.add(m.get(row, col), val));
                    }
                }
            }
        }
        m.rank(f)
    };
    let mut table = BettiTable::new(true);
    for i in 0..=c {
        for t in 0..top {
            let dim = basis[t].len() * wedge[i].len();
            let incoming = if t == 0 { 0 } else { rank(i + 1, t - 1) };
            let b = dim - rank(i, t) - incoming;
            table.add(i, (t + i) as i64, b as u64);
        }
    }
    Ok(table)
}
