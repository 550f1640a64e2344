//! Schreyer frames: syzygies of a Gröbner basis computed level by level with
//! the induced module orders.
//!
//! Module terms `x^a e_b` are compared through the ring monomial
//! `x^a * T(b)`, where `T(b)` is the total lead monomial of the basis element
//! `e_b`, and then by the index `b` (smaller index is larger). Within a lead
//! component, elements are sorted lexicographically decreasing; together with
//! generic coordinates this keeps the frame length at the codimension for
//! Cohen–Macaulay quotients.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::algebra::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::matrix::PolyMatrix;

/// Largest ring size supported by the packed term keys.
pub const MAX_RESOLUTION_VARS: usize = 14;

/// Packed graded-reverse-lexicographic key: a larger key is a larger monomial,
/// and `key(q * m) = key(m) + shift(q)`.
fn grevlex_key(m: &Monomial, n: usize) -> u128 {
    let mut k = m.degree() as u128;
    for i in (0..n).rev() {
        k = (k << 8) | (255 - m.exp(i)) as u128;
    }
    k
}

fn key_shift(q: &Monomial, n: usize) -> u128 {
    let mut s = (q.degree() as u128) << (8 * n);
    for i in 0..n {
        s = s.wrapping_sub((q.exp(i) as u128) << (8 * i));
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Key(u128, u32);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
struct Term {
    mono: Monomial,
    comp: u32,
    coeff: u32,
    key: u128,
}

/// One level of the frame: elements of `F_k` written in the basis of
/// `F_{k-1}`.
#[derive(Clone, Debug, Default)]
struct Level {
    elems: Vec<Vec<Term>>,
    /// `(n_a, c(a))`: lead monomial and lead component.
    lead: Vec<(Monomial, u32)>,
    /// `T(a) = n_a * T(c(a))`.
    total: Vec<Monomial>,
}

/// A (generally non-minimal) free resolution as a list of matrices
/// `d_k : F_k -> F_{k-1}` with the degrees of the basis elements of each
/// `F_k` (`F_0 = R`).
pub(crate) struct Frame {
    pub maps: Vec<PolyMatrix>,
    pub degrees: Vec<Vec<i64>>,
}

fn lex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.exponents().cmp(a.exponents())
}

/// Schreyer resolution of `R/(gb)` from a reduced grevlex Gröbner basis.
pub(crate) fn frame(ring: &Arc<PolyRing>, gb: &[Polynomial], budget: &Budget) -> Result<Frame> {
    let n = ring.nvars();
    if n > MAX_RESOLUTION_VARS {
        return Err(Error::TooManyVariables(n));
    }
    let p = ring.characteristic();
    let mut sorted: Vec<&Polynomial> = gb.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by(|a, b| lex_desc(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let first = Level {
        elems: sorted
            .iter()
            .map(|g| {
                g.terms()
                    .iter()
                    .map(|&(m, c)| Term {
                        mono: m,
                        comp: 0,
                        coeff: c,
                        key: grevlex_key(&m, n),
                    })
                    .collect()
            })
            .collect(),
        lead: sorted.iter().map(|g| (*g.lead_monomial().unwrap(), 0)).collect(),
        total: sorted.iter().map(|g| *g.lead_monomial().unwrap()).collect(),
    };
    let mut levels = vec![first];
    let mut done = 0u64;
    while !levels.last().unwrap().elems.is_empty() {
        if levels.len() > n + 1 {
            return Err(Error::NotAResolution("frame longer than the syzygy bound".into()));
        }
        let next = next_level(ring, levels.last().unwrap(), p, budget, &mut done)?;
        levels.push(next);
    }
    levels.pop();

    let mut degrees: Vec<Vec<i64>> = vec![vec![0]];
    let mut totals_prev: Vec<Monomial> = vec![Monomial::ONE];
    let mut maps = Vec::new();
    for lv in &levels {
        let mut m = PolyMatrix::zeros(ring, totals_prev.len(), lv.elems.len());
        for (a, e) in lv.elems.iter().enumerate() {
            let mut by_comp: FxHashMap<u32, Vec<(Monomial, u32)>> = FxHashMap::default();
            for t in e {
                by_comp.entry(t.comp).or_default().push((t.mono, t.coeff));
            }
            for (c, terms) in by_comp {
                m.set(c as usize, a, Polynomial::from_terms(ring, terms));
            }
        }
        maps.push(m);
        degrees.push(lv.total.iter().map(|t| t.degree() as i64).collect());
        totals_prev = lv.total.clone();
    }
    Ok(Frame { maps, degrees })
}

fn next_level(ring: &Arc<PolyRing>, lv: &Level, p: u32, budget: &Budget, done: &mut u64) -> Result<Level> {
    let n = ring.nvars();
    let mut by_comp: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
    for (a, &(_, c)) in lv.lead.iter().enumerate() {
        by_comp.entry(c).or_default().push(a);
    }
    // Frame: for each a, minimal generators of (n_b : n_a) over later b.
    let mut pairs: Vec<(usize, Monomial, usize)> = Vec::new();
    for group in by_comp.values() {
        for (pos, &a) in group.iter().enumerate() {
            let na = lv.lead[a].0;
            let mut quots: Vec<(Monomial, usize)> = group[pos + 1..]
                .iter()
                .map(|&b| {
                    let nb = lv.lead[b].0;
                    (na.gcd(&nb).quotient_of(&nb).expect("gcd divides"), b)
                })
                .collect();
            quots.sort_by_key(|&(q, b)| (q.degree(), b));
            let mut kept: Vec<(Monomial, usize)> = Vec::new();
            for (q, b) in quots {
                if !kept.iter().any(|(k, _)| k.divides(&q)) {
                    kept.push((q, b));
                }
            }
            pairs.extend(kept.into_iter().map(|(q, b)| (a, q, b)));
        }
    }
    let mut reducers: FxHashMap<u32, Vec<(Monomial, usize)>> = FxHashMap::default();
    for (a, &(m, c)) in lv.lead.iter().enumerate() {
        reducers.entry(c).or_default().push((m, a));
    }

    let total_queue = pairs.len();
    let mut new: Vec<(Monomial, u32, Vec<Term>)> = Vec::with_capacity(pairs.len());
    for (idx, (a, q, b)) in pairs.into_iter().enumerate() {
        *done += 1;
        if budget.expired() || budget.max_pairs.is_some_and(|m| *done > m) {
            return Err(Error::BudgetExceeded {
                pairs_processed: *done - 1,
                queue_size: total_queue - idx,
            });
        }
        let na = lv.lead[a].0;
        let nb = lv.lead[b].0;
        let lcm = na.mul(&q);
        let qb = nb.quotient_of(&lcm).expect("lcm is a multiple");
        let syz = syzygy(ring, lv, &reducers, (a, q), (b, qb), p)?;
        new.push((q, a as u32, syz));
    }
    new.sort_by(|x, y| x.1.cmp(&y.1).then(lex_desc(&x.0, &y.0)));
    let mut out = Level::default();
    for (q, a, mut terms) in new {
        let total = q.mul(&lv.total[a as usize]);
        for t in terms.iter_mut() {
            t.key = grevlex_key(&t.mono.mul(&lv.total[t.comp as usize]), n);
        }
        terms.sort_by(|x, y| Key(y.key, y.comp).cmp(&Key(x.key, x.comp)));
        debug_assert!(terms[0].comp == a && terms[0].mono == q && terms[0].coeff == 1);
        out.elems.push(terms);
        out.lead.push((q, a));
        out.total.push(total);
    }
    Ok(out)
}

/// Reduces the S-vector of `(a, b)` to zero and returns the recorded
/// syzygy `qa e_a - qb e_b - sum q_c e_c` (keys left unset).
fn syzygy(
    ring: &Arc<PolyRing>,
    lv: &Level,
    reducers: &FxHashMap<u32, Vec<(Monomial, usize)>>,
    (a, qa): (usize, Monomial),
    (b, qb): (usize, Monomial),
    p: u32,
) -> Result<Vec<Term>> {
    let n = ring.nvars();
    let f = ring.field();
    let mut acc: FxHashMap<Key, (Monomial, u32)> = FxHashMap::default();
    let mut heap: BinaryHeap<Key> = BinaryHeap::new();
    let mut record: FxHashMap<(Monomial, u32), u32> = FxHashMap::default();
    record.insert((qa, a as u32), 1);
    record.insert((qb, b as u32), p - 1);

    let add = |acc: &mut FxHashMap<Key, (Monomial, u32)>, heap: &mut BinaryHeap<Key>, e: usize, q: &Monomial, c: u32, skip_lead: bool| {
        let shift = key_shift(q, n);
        let terms = &lv.elems[e];
        let start = usize::from(skip_lead);
        for t in &terms[start..] {
            let key = Key(t.key.wrapping_add(shift), t.comp);
            let v = f.mul(t.coeff, c);
            match acc.entry(key) {
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    let s = f.add(o.get().1, v);
                    o.get_mut().1 = s;
                }
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert((t.mono.mul(q), v));
                    heap.push(key);
                }
            }
        }
    };
    // Both leads cancel exactly.
    add(&mut acc, &mut heap, a, &qa, 1, true);
    add(&mut acc, &mut heap, b, &qb, p - 1, true);

    while let Some(key) = heap.pop() {
        let Some((mono, c)) = acc.remove(&key) else { continue };
        if c == 0 {
            continue;
        }
        let cands = reducers.get(&key.1).map(Vec::as_slice).unwrap_or(&[]);
        let Some(&(lead, e)) = cands.iter().find(|(l, _)| l.divides(&mono)) else {
            return Err(Error::NotAResolution("S-vector does not reduce to zero".into()));
        };
        let q = lead.quotient_of(&mono).expect("divides");
        let neg = f.neg(c);
        add(&mut acc, &mut heap, e, &q, neg, true);
        let r = record.entry((q, e as u32)).or_insert(0);
        *r = f.add(*r, neg);
    }
    Ok(record
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((mono, comp), coeff)| Term {
            mono,
            comp,
            coeff,
            key: 0,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_keys_follow_grevlex() {
        let r = PolyRing::standard(5, 101).unwrap();
        let ms = Monomial::all_of_degree(5, 3);
        for a in &ms {
            for b in &ms {
                assert_eq!(grevlex_key(a, 5).cmp(&grevlex_key(b, 5)), r.cmp(a, b));
            }
            let q = Monomial::from_exponents(&[1, 0, 2, 0, 1]).unwrap();
            assert_eq!(grevlex_key(&q.mul(a), 5), grevlex_key(a, 5).wrapping_add(key_shift(&q, 5)));
        }
    }
}
