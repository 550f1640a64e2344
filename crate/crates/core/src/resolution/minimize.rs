//! Pruning a free resolution to a minimal one by splitting off unit entries.

use crate::algebra::Polynomial;
use crate::matrix::PolyMatrix;

/// Removes every trivial summand `R(-j) --u--> R(-j)` from the complex.
///
/// For a unit `u = A[r][c]` in `d_k`, the subcomplex spanned by `e_c` and its
/// image is exact; the quotient has `A' = A - A[:,c] A[r,:] / u` with row `r`
/// and column `c` deleted, `d_{k+1}` loses row `c` and `d_{k-1}` loses
/// column `r`.
pub(crate) fn prune(maps: &mut [PolyMatrix], degrees: &mut [Vec<i64>]) {
    let mut alive: Vec<Vec<bool>> = degrees.iter().map(|d| vec![true; d.len()]).collect();
    for k in 0..maps.len() {
        loop {
            let Some((r, c)) = find_unit(&maps[k], &degrees[k], &degrees[k + 1], &alive[k], &alive[k + 1]) else {
                break;
            };
            let a = &mut maps[k];
            let ring = a.ring().clone();
            let f = ring.field();
            let uinv = f.inv(a.get(r, c).lead_coeff());
            let rows: Vec<usize> = (0..a.nrows())
                .filter(|&s| s != r && alive[k][s] && !a.get(s, c).is_zero())
                .collect();
            let cols: Vec<usize> = (0..a.ncols())
                .filter(|&j| j != c && alive[k + 1][j] && !a.get(r, j).is_zero())
                .collect();
            for &s in &rows {
                let factor = a.get(s, c).scalar_mul(uinv);
                for &j in &cols {
                    let v = a.get(s, j) - &(&factor * a.get(r, j));
                    a.set(s, j, v);
                }
            }
            alive[k][r] = false;
            alive[k + 1][c] = false;
        }
    }
    for k in 0..maps.len() {
        let rows: Vec<usize> = (0..alive[k].len()).filter(|&i| alive[k][i]).collect();
        let cols: Vec<usize> = (0..alive[k + 1].len()).filter(|&i| alive[k + 1][i]).collect();
        maps[k] = maps[k].submatrix(&rows, &cols);
    }
    for (d, a) in degrees.iter_mut().zip(&alive) {
        *d = d.iter().zip(a).filter(|(_, &keep)| keep).map(|(&x, _)| x).collect();
    }
}

fn find_unit(m: &PolyMatrix, rdeg: &[i64], cdeg: &[i64], ralive: &[bool], calive: &[bool]) -> Option<(usize, usize)> {
    for c in 0..m.ncols() {
        if !calive[c] {
            continue;
        }
        for r in 0..m.nrows() {
            if ralive[r] && rdeg[r] == cdeg[c] && is_unit(m.get(r, c)) {
                return Some((r, c));
            }
        }
    }
    None
}

fn is_unit(p: &Polynomial) -> bool {
    p.is_constant() && !p.is_zero()
}
