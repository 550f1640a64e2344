//! Matrices of polynomials: products, minors, Pfaffians, adjugates.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Dense matrix with polynomial entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::constant(ring, 1));
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        for p in rows.iter().flatten() {
            if !(Arc::ptr_eq(p.ring(), ring) || **p.ring() == **ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses a matrix given as rows of polynomial strings.
    pub fn parse(ring: &Arc<PolyRing>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| crate::algebra::parse::parse(s, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero() && (0..i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p * c).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
        }
    }

    /// Applies `f` to every entry.
    pub fn map<F>(&self, f: F) -> Result<PolyMatrix>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = data.first().map_or(self.ring.clone(), |p| p.ring().clone());
        Ok(PolyMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Determinant by expansion over column subsets (fine up to about 8x8).
    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::constant(&self.ring, 1));
        }
        // dets[S] = det(rows 0..|S|, columns S)
        let mut dets: HashMap<u32, Polynomial> = HashMap::new();
        dets.insert(0, Polynomial::constant(&self.ring, 1));
        for r in 0..n {
            let mut next: HashMap<u32, Polynomial> = HashMap::new();
            for (&s, d) in &dets {
                if d.is_zero() {
                    continue;
                }
                for c in 0..n {
                    if s & (1 << c) != 0 || self.get(r, c).is_zero() {
                        continue;
                    }
                    // sign: number of chosen columns to the right of c
                    let later = (s >> (c + 1)).count_ones();
                    let term = d * self.get(r, c);
                    let term = if later % 2 == 1 { -&term } else { term };
                    let e = next.entry(s | (1 << c)).or_insert_with(|| Polynomial::zero(&self.ring));
                    *e = &*e + &term;
                }
            }
            dets = next;
        }
        Ok(dets.remove(&((1u32 << n) - 1)).unwrap_or_else(|| Polynomial::zero(&self.ring)))
    }

    /// All `k x k` minors, rows and columns in lexicographic order of the
    /// index subsets (row subsets outermost).
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                out.push(self.submatrix(&rs, &cs).determinant()?);
            }
        }
        Ok(out)
    }

    /// Pfaffian of a skew-symmetric matrix (zero for odd size).
    pub fn pfaffian(&self) -> Result<Polynomial> {
        if !self.is_skew() {
            return Err(Error::Invalid("Pfaffian of a non-skew matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pfaffian_of(&idx))
    }

    fn pfaffian_of(&self, idx: &[usize]) -> Polynomial {
        if idx.is_empty() {
            return Polynomial::constant(&self.ring, 1);
        }
        if idx.len() % 2 == 1 {
            return Polynomial::zero(&self.ring);
        }
        let first = idx[0];
        let mut acc = Polynomial::zero(&self.ring);
        for k in 1..idx.len() {
            let a = self.get(first, idx[k]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&j| j != idx[k]).collect();
            let t = a * &self.pfaffian_of(&rest);
            acc = if k % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    /// Pfaffians of the principal `k x k` submatrices, index subsets in
    /// lexicographic order.
    pub fn principal_pfaffians(&self, k: usize) -> Result<Vec<Polynomial>> {
        if !self.is_skew() {
            return Err(Error::Invalid("Pfaffians of a non-skew matrix".into()));
        }
        Ok(subsets(self.rows, k).iter().map(|s| self.pfaffian_of(s)).collect())
    }

    /// Adjugate (transpose of the cofactor matrix), so `A adj(A) = det(A) I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::Invalid("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut out = PolyMatrix::zeros(&self.ring, n, n);
        if n == 1 {
            out.set(0, 0, Polynomial::constant(&self.ring, 1));
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let d = self.submatrix(&rs, &cs).determinant()?;
                out.set(i, j, if (i + j) % 2 == 1 { -&d } else { d });
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
