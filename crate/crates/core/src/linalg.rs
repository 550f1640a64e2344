//! Exact linear algebra over F_p.

use std::collections::BTreeMap;

use crate::algebra::PrimeField;

/// Incremental row echelon form of sparse vectors.
pub struct Echelon {
    field: PrimeField,
    /// pivot column -> row (monic at the pivot)
    rows: BTreeMap<usize, Vec<(usize, u32)>>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, row: Vec<(usize, u32)>) -> BTreeMap<usize, u32> {
        let f = self.field;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (c, v) in row {
            let e = acc.entry(c).or_insert(0);
            *e = f.add(*e, v % f.characteristic());
        }
        acc.retain(|_, v| *v != 0);
        let mut cursor = 0usize;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, &v)| (c, v));
            let Some((c, v)) = next else { break };
            for &(cc, pv) in &self.rows[&c] {
                let e = acc.entry(cc).or_insert(0);
                *e = f.sub(*e, f.mul(v, pv));
                if *e == 0 {
                    acc.remove(&cc);
                }
            }
            cursor = c + 1;
        }
        acc
    }

    /// Adds `row`; returns whether it was independent of the stored rows.
    pub fn insert_sparse(&mut self, row: Vec<(usize, u32)>) -> bool {
        let acc = self.reduce(row);
        let Some((&pc, &pv)) = acc.iter().next() else {
            return false;
        };
        let inv = self.field.inv(pv);
        let row = acc.into_iter().map(|(c, v)| (c, self.field.mul(v, inv))).collect();
        self.rows.insert(pc, row);
        true
    }

    pub fn is_in_span(&self, row: Vec<(usize, u32)>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Dense matrix over F_p, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel(&self, f: PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self, f: PrimeField) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn mul(&self, other: &Matrix, f: PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self, f: PrimeField) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let piv = aug.rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn echelon_detects_dependence() {
        let mut e = Echelon::new(f());
        assert!(e.insert_sparse(vec![(0, 1), (2, 3)]));
        assert!(e.insert_sparse(vec![(2, 1)]));
        assert!(!e.insert_sparse(vec![(0, 5)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn small_determinants() {
        let m = Matrix::from_rows(vec![vec![2, 1], vec![7, 4]]);
        assert_eq!(m.determinant(f()), 1);
        let s = Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(s.determinant(f()), 0);
        assert_eq!(s.kernel(f()).len(), 1);
    }

    proptest! {
        #[test]
        fn kernel_and_inverse(vals in proptest::collection::vec(0u32..32003, 12)) {
            let fld = f();
            let m = Matrix { rows: 3, cols: 4, data: vals.clone() };
            for v in m.kernel(fld) {
                let col = Matrix { rows: 4, cols: 1, data: v };
                prop_assert!(m.mul(&col, fld).data.iter().all(|&x| x == 0));
            }
            prop_assert_eq!(m.rank(fld) + m.kernel(fld).len(), 4);
            let sq = Matrix { rows: 3, cols: 3, data: vals[..9].to_vec() };
            match sq.inverse(fld) {
                Some(inv) => {
                    let id = sq.mul(&inv, fld);
                    prop_assert_eq!(id, Matrix::from_rows(vec![vec![1,0,0], vec![0,1,0], vec![0,0,1]]));
                    prop_assert_ne!(sq.determinant(fld), 0);
                }
                None => prop_assert_eq!(sq.determinant(fld), 0),
            }
        }
    }
}
