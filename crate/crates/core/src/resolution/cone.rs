//! Betti-table bookkeeping: mapping cones of links and the Gorenstein /
//! Calabi–Yau test.

use serde::{Deserialize, Serialize};

use super::BettiTable;
use crate::error::{Error, Result};
use crate::matrix::subsets;

/// Outcome of [`certify_ag_cy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgCertificate {
    pub is_ag: bool,
    /// The twist `k` of the last module `R(-k)` when it has rank one.
    pub socle_twist: Option<i64>,
    pub is_cy_twist: bool,
}

/// Reads off arithmetic Gorensteinness of a codimension-4 quotient and the
/// Calabi–Yau condition (socle twist 8 and `b_{i,j} = b_{4-i,8-j}`) from a
/// minimal Betti table.
pub fn certify_ag_cy(table: &BettiTable) -> Result<AgCertificate> {
    if !table.is_minimal() {
        return Err(Error::NotAResolution("table is not minimal".into()));
    }
    if table.module(0) != vec![(0, 1)] {
        return Err(Error::NotAResolution("F_0 must be R".into()));
    }
    for (i, j, _) in table.entries() {
        if i > 0 && j < i as i64 {
            return Err(Error::NotAResolution(format!("twist {j} too small in F_{i}")));
        }
    }
    let len = table.length();
    let last = table.module(len);
    let is_ag = len == 4 && table.rank(4) == 1;
    let socle_twist = (table.rank(len) == 1 && len > 0).then(|| last[0].0);
    let is_cy_twist = is_ag && socle_twist == Some(8) && table.is_symmetric(4, 8);
    Ok(AgCertificate {
        is_ag,
        socle_twist,
        is_cy_twist,
    })
}

/// Betti table of the mapping cone that resolves the ideal linked to a
/// codimension-`c` subscheme through a complete intersection of the given
/// degrees: `G_i = K_i + F_{c+1-i}^*(-s)` for `1 <= i < c` and
/// `G_c = F_1^*(-s)`, with `s` the sum of the degrees and `K` the Koszul
/// complex of the complete intersection. The result is generally not minimal.
pub fn predict_link_betti(sub: &BettiTable, ci_degrees: &[u32], total_twist: i64) -> Result<BettiTable> {
    predict_link_betti_cancelling(sub, ci_degrees, total_twist, &[])
}

/// As [`predict_link_betti`], additionally splitting off one pair
/// `R(d - s)` in `G_c` and `G_{c-1}` for every complete-intersection degree
/// `d` in `cancel`. Such a pair is a unit in the cone whenever the
/// corresponding hypersurface is a minimal generator of the subscheme.
pub fn predict_link_betti_cancelling(
    sub: &BettiTable,
    ci_degrees: &[u32],
    total_twist: i64,
    cancel: &[u32],
) -> Result<BettiTable> {
    let sigma: i64 = ci_degrees.iter().map(|&d| d as i64).sum();
    if sigma != total_twist {
        return Err(Error::TwistMismatch(format!(
            "total twist {total_twist} differs from the degree sum {sigma}"
        )));
    }
    let c = ci_degrees.len();
    if c == 0 || sub.length() > c || sub.module(0) != vec![(0, 1)] {
        return Err(Error::NotAResolution(format!(
            "expected a resolution of length at most {c} starting with R"
        )));
    }
    let mut out = BettiTable::new(false);
    out.add(0, 0, 1);
    for i in 1..=c {
        if i < c {
            for s in subsets(c, i) {
                let j: i64 = s.iter().map(|&k| ci_degrees[k] as i64).sum();
                out.add(i, j, 1);
            }
        }
        let dual = if i < c { c + 1 - i } else { 1 };
        for (j, b) in sub.module(dual) {
            out.add(i, sigma - j, b);
        }
    }
    for &d in cancel {
        let j = sigma - d as i64;
        out.remove(c, j, 1)?;
        out.remove(c - 1, j, 1)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(mods: &[&[(u64, i64)]], minimal: bool) -> BettiTable {
        BettiTable::from_modules(mods, minimal)
    }

    #[test]
    fn koszul_tables() {
        let four_quadrics = t(&[&[(4, 2)], &[(6, 4)], &[(4, 6)], &[(1, 8)]], true);
        let c = certify_ag_cy(&four_quadrics).unwrap();
        assert_eq!((c.is_ag, c.socle_twist, c.is_cy_twist), (true, Some(8), true));
        let ci2223 = t(&[&[(3, 2), (1, 3)], &[(3, 4), (3, 5)], &[(1, 6), (3, 7)], &[(1, 9)]], true);
        let c = certify_ag_cy(&ci2223).unwrap();
        assert_eq!((c.is_ag, c.socle_twist, c.is_cy_twist), (true, Some(9), false));
    }

    #[test]
    fn bad_tables_are_rejected() {
        let mut bad = t(&[&[(4, 2)]], true);
        bad.add(0, 1, 1);
        assert!(certify_ag_cy(&bad).is_err());
        assert!(certify_ag_cy(&t(&[&[(4, 2)]], false)).is_err());
        let plane = t(&[&[(4, 1)], &[(6, 2)], &[(4, 3)], &[(1, 4)]], true);
        assert!(matches!(
            predict_link_betti(&plane, &[1, 2, 2, 2], 8),
            Err(Error::TwistMismatch(_))
        ));
    }

    #[test]
    fn link_of_a_linear_space() {
        let plane = t(&[&[(4, 1)], &[(6, 2)], &[(4, 3)], &[(1, 4)]], true);
        let g = predict_link_betti(&plane, &[1, 2, 2, 2], 7).unwrap();
        let expect = t(
            &[&[(1, 1), (3, 2), (1, 3)], &[(3, 3), (7, 4)], &[(9, 5), (1, 6)], &[(4, 6)]],
            false,
        );
        assert_eq!(g, expect);
    }
}
