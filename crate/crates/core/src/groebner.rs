//! Reduced Gröbner bases of homogeneous ideals.
//!
//! Buchberger's algorithm processed degree by degree (the sugar strategy for
//! homogeneous input), with the Gebauer–Möller pair criteria. All S-pairs of
//! one degree are reduced together as rows of a sparse matrix over the
//! monomials they reach, F4 style; single normal forms use a heap.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use crate::algebra::{Monomial, PolyRing, Polynomial, MAX_VARS};
use crate::error::{Error, Result};

/// Limits on a Gröbner computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_pairs: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn pairs(n: u64) -> Self {
        Budget {
            max_pairs: Some(n),
            deadline: None,
        }
    }

    pub fn seconds(s: f64) -> Self {
        Budget {
            max_pairs: None,
            deadline: Some(Instant::now() + Duration::from_secs_f64(s)),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub(crate) fn check(&self, processed: u64, queued: usize) -> Result<()> {
        if self.max_pairs.is_some_and(|m| processed >= m) || self.expired() {
            return Err(Error::BudgetExceeded {
                pairs_processed: processed,
                queue_size: queued,
            });
        }
        Ok(())
    }
}

/// All monomials of one (weighted) degree.
fn monomials_of_degree(ring: &PolyRing, d: u32) -> Vec<Monomial> {
    let mut mons = Vec::new();
    let weights = ring.weights();
    let n = ring.nvars();
    let mut exps = [0u32; MAX_VARS];
    fn rec(i: usize, n: usize, left: u32, w: &[u32], exps: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
        if i == n {
            if left == 0 {
                out.push(Monomial::from_exponents(&exps[..n]).expect("degree in range"));
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            exps[i] = e;
            rec(i + 1, n, left - e * w[i], w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(0, n, d, weights, &mut exps, &mut mons);
    mons
}

#[derive(Clone)]
struct Elem {
    terms: Vec<(Monomial, u32)>,
    lead: Monomial,
}

/// Memoized "which element's lead divides `m`". A monomial is divisible iff
/// it is a lead itself or one of its divisors `m / x_i` is. Entries are only
/// valid while elements are added in nondecreasing degree after all lookups
/// of lower degree, which is how the Buchberger loop proceeds.
#[derive(Default)]
struct Divisors {
    memo: FxHashMap<Monomial, Option<u32>>,
}

impl Divisors {
    fn insert(&mut self, lead: Monomial, k: usize) {
        self.memo.insert(lead, Some(k as u32));
    }

    fn get(&mut self, m: &Monomial) -> Option<usize> {
        if let Some(&k) = self.memo.get(m) {
            return k.map(|k| k as usize);
        }
        let mut found = None;
        for i in 0..MAX_VARS {
            if let Some(lower) = m.lower(i) {
                if let Some(k) = self.get(&lower) {
                    found = Some(k as u32);
                    break;
                }
            }
        }
        self.memo.insert(*m, found);
        found.map(|k| k as usize)
    }
}

/// Heap entry ordered by the ring's monomial order.
struct Ordered<'a>(Monomial, &'a PolyRing);

impl PartialEq for Ordered<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Ordered<'_> {}

impl PartialOrd for Ordered<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

/// Basis elements with their divisor lookup, shared by the Buchberger loop
/// and normal forms.
pub(crate) struct Reducer {
    ring: Arc<PolyRing>,
    elems: Vec<Elem>,
    active: Vec<bool>,
    divisors: Divisors,
}

impl Reducer {
    fn new(ring: &Arc<PolyRing>) -> Self {
        Reducer {
            ring: ring.clone(),
            elems: Vec::new(),
            active: Vec::new(),
            divisors: Divisors::default(),
        }
    }

    /// Adds a monic element, sorted decreasingly.
    fn push(&mut self, terms: Vec<(Monomial, u32)>) -> usize {
        let lead = terms[0].0;
        let k = self.elems.len();
        self.elems.push(Elem { terms, lead });
        self.active.push(true);
        self.divisors.insert(lead, k);
        k
    }

    /// Whether every monomial of degree `d` is divisible by a basis lead.
    fn covers_degree(&mut self, d: u32) -> bool {
        let mons = monomials_of_degree(&self.ring, d);
        // smallest monomials first: they are the likeliest to be missed
        mons.iter().rev().all(|m| self.divisors.get(m).is_some())
    }

    /// Full normal form of `terms`, all of one degree. The input need not be
    /// sorted.
    fn reduce_homogeneous(&mut self, terms: &[(Monomial, u32)]) -> Vec<(Monomial, u32)> {
        let ring = self.ring.clone();
        let f = ring.field();
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        let mut heap = std::collections::BinaryHeap::new();
        for &(m, c) in terms {
            let e = acc.entry(m).or_insert_with(|| {
                heap.push(Ordered(m, &ring));
                0
            });
            *e = f.add(*e, c);
        }
        let mut out = Vec::new();
        while let Some(Ordered(m, _)) = heap.pop() {
            let c = acc.remove(&m).unwrap_or(0);
            if c == 0 {
                continue;
            }
            match self.divisors.get(&m) {
                Some(k) => {
                    let e = &self.elems[k];
                    let q = e.lead.quotient_of(&m).expect("divides");
                    // lead coefficient of every stored element is 1
                    let neg = f.neg(c);
                    for (t, a) in &e.terms[1..] {
                        let t = t.mul(&q);
                        let v = acc.entry(t).or_insert_with(|| {
                            heap.push(Ordered(t, &ring));
                            0
                        });
                        *v = f.add(*v, f.mul(*a, neg));
                    }
                }
                None => out.push((m, c)),
            }
        }
        out
    }

    /// Reduces the tail of element `k` by all elements.
    fn tail_reduce(&mut self, k: usize) -> Vec<(Monomial, u32)> {
        let terms = std::mem::take(&mut self.elems[k].terms);
        let mut out = vec![terms[0]];
        out.extend(self.reduce_homogeneous(&terms[1..]));
        self.elems[k].terms = terms;
        out
    }
}

fn make_monic(ring: &PolyRing, mut terms: Vec<(Monomial, u32)>) -> Vec<(Monomial, u32)> {
    let f = ring.field();
    let c = terms[0].1;
    if c != 1 {
        let inv = f.inv(c);
        for t in terms.iter_mut() {
            t.1 = f.mul(t.1, inv);
        }
    }
    terms
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

/// A reduced Gröbner basis (or its truncation at a degree bound).
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    complete: bool,
    degree_bound: Option<u32>,
    reducer: Mutex<Reducer>,
}

impl Clone for GroebnerBasis {
    fn clone(&self) -> Self {
        GroebnerBasis::assemble(self.ring.clone(), self.polys.clone(), self.complete, self.degree_bound)
    }
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("ring", &self.ring)
            .field("polys", &self.polys)
            .field("complete", &self.complete)
            .finish()
    }
}

impl GroebnerBasis {
    fn assemble(ring: Arc<PolyRing>, polys: Vec<Polynomial>, complete: bool, degree_bound: Option<u32>) -> Self {
        let mut reducer = Reducer::new(&ring);
        for p in &polys {
            reducer.push(p.terms().to_vec());
        }
        GroebnerBasis {
            ring,
            polys,
            complete,
            degree_bound,
            reducer: Mutex::new(reducer),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Basis elements, monic, sorted by increasing leading monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Whether every S-pair was processed (no degree truncation).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Degree up to which the basis is valid when truncated.
    pub fn valid_through(&self) -> Option<u32> {
        if self.complete {
            None
        } else {
            self.degree_bound
        }
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| *p.lead_monomial().unwrap()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.lead_monomial().unwrap().is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert!(
            Arc::ptr_eq(f.ring(), &self.ring) || **f.ring() == *self.ring,
            "normal form across rings"
        );
        if let Some(b) = self.valid_through() {
            debug_assert!(f.degree().is_none_or(|d| d <= b), "normal form beyond truncation degree");
        }
        let mut by_degree: BTreeMap<u32, Vec<(Monomial, u32)>> = BTreeMap::new();
        for &(m, c) in f.terms() {
            by_degree.entry(self.ring.degree(&m)).or_default().push((m, c));
        }
        let mut reducer = self.reducer.lock().expect("reducer poisoned");
        let mut out = Vec::new();
        for (_, terms) in by_degree {
            out.extend(reducer.reduce_homogeneous(&terms));
        }
        Polynomial::from_terms(&self.ring, out)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`'s order.
pub fn groebner(ring: &Arc<PolyRing>, gens: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis> {
    Ok(run(ring, gens, None, false, budget)?.0)
}

/// Basis valid for all degrees `<= max_degree`.
pub fn groebner_truncated(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    max_degree: u32,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    Ok(run(ring, gens, Some(max_degree), false, budget)?.0)
}

/// Runs Buchberger degree by degree (up to `max_degree` if given) and stops
/// at the first degree `d` where every monomial of degree `d` is a leading
/// monomial, i.e. where the ideal is found to contain a power of the
/// irrelevant ideal. Returns the basis computed so far and that degree; a
/// basis stopped this way is not tail-reduced.
pub fn groebner_until_artinian(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    max_degree: Option<u32>,
    budget: &Budget,
) -> Result<(GroebnerBasis, Option<u32>)> {
    run(ring, gens, max_degree, true, budget)
}

fn run(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    max_degree: Option<u32>,
    stop_artinian: bool,
    budget: &Budget,
) -> Result<(GroebnerBasis, Option<u32>)> {
    let mut inputs: BTreeMap<u32, Vec<&Polynomial>> = BTreeMap::new();
    for g in gens {
        if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        inputs.entry(g.homogeneous_degree()?).or_default().push(g);
    }
    let mut red = Reducer::new(ring);
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0u64;
    let mut truncated = false;
    let mut artinian = None;
    loop {
        let next_pair = pairs.iter().map(|p| p.deg).min();
        let next_input = inputs.keys().next().copied();
        let d = match (next_pair, next_input) {
            (None, None) => break,
            (a, b) => a.into_iter().chain(b).min().unwrap(),
        };
        if max_degree.is_some_and(|m| d > m) {
            truncated = true;
            break;
        }
        if let Some(list) = inputs.remove(&d) {
            for g in list {
                let r = red.reduce_homogeneous(g.terms());
                if !r.is_empty() {
                    add_element(&mut red, &mut pairs, make_monic(ring, r));
                }
            }
        }
        let (mut now, rest): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.deg == d);
        pairs = rest;
        now.sort_by_key(|p| (p.i, p.j));
        if !now.is_empty() {
            budget.check(processed, pairs.len() + now.len())?;
            let mut dropped = 0;
            if let Some(m) = budget.max_pairs {
                let allowed = (m - processed) as usize;
                dropped = now.len().saturating_sub(allowed);
                now.truncate(allowed);
            }
            processed += now.len() as u64;
            let mut mults: Vec<(usize, Monomial)> = Vec::with_capacity(2 * now.len());
            for p in &now {
                for k in [p.i, p.j] {
                    mults.push((k, red.elems[k].lead.quotient_of(&p.lcm).expect("lcm")));
                }
            }
            let queued = pairs.len() + dropped;
            let batch = reduce_batch(&mut red, mults, budget).map_err(|e| match e {
                Error::BudgetExceeded { .. } => Error::BudgetExceeded {
                    pairs_processed: processed,
                    queue_size: queued,
                },
                e => e,
            })?;
            for r in batch {
                add_element(&mut red, &mut pairs, r);
            }
            if let Some(m) = budget.max_pairs {
                if dropped > 0 || (processed >= m && !pairs.is_empty()) {
                    return Err(Error::BudgetExceeded {
                        pairs_processed: processed,
                        queue_size: pairs.len() + dropped,
                    });
                }
            }
        }
        if red.elems.iter().zip(&red.active).any(|(e, &a)| a && e.lead.is_one()) {
            // unit ideal: nothing further can change
            pairs.clear();
            inputs.clear();
        } else if stop_artinian && red.covers_degree(d) {
            artinian = Some(d);
            truncated = !(pairs.is_empty() && inputs.is_empty());
            break;
        }
    }
    let keep: Vec<usize> = (0..red.elems.len()).filter(|&k| red.active[k]).collect();
    let mut polys = Vec::with_capacity(keep.len());
    for &k in &keep {
        // a basis cut off at an Artinian degree is left unreduced
        let terms = if artinian.is_some() {
            red.elems[k].terms.clone()
        } else {
            red.tail_reduce(k)
        };
        polys.push(Polynomial::from_sorted(ring, terms));
    }
    polys.sort_by(|a, b| ring.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    let bound = if artinian.is_some() { artinian } else { max_degree };
    Ok((GroebnerBasis::assemble(ring.clone(), polys, !truncated, bound), artinian))
}

/// Reduces the multiples `q * g_k` (all of one degree) simultaneously, as
/// rows of one sparse matrix: every column monomial divisible by a lead gets
/// a pivot row, the remaining rows are reduced and echelonized. Returns the
/// new monic elements, whose leads are divisible by no earlier lead.
fn reduce_batch(
    red: &mut Reducer,
    mults: Vec<(usize, Monomial)>,
    budget: &Budget,
) -> Result<Vec<Vec<(Monomial, u32)>>> {
    let ring = red.ring.clone();
    let f = ring.field();
    let mut seen: rustc_hash::FxHashSet<(usize, Monomial)> = Default::default();
    let todo: Vec<(usize, Monomial)> = mults.into_iter().filter(|m| seen.insert(*m)).collect();

    // symbolic preprocessing
    let mut cols: FxHashMap<Monomial, u32> = FxHashMap::default();
    let mut mons: Vec<Monomial> = Vec::new();
    let mut pivots: Vec<(usize, Monomial)> = Vec::new();
    let mut queue: Vec<Monomial> = Vec::new();
    let mut visit = |m: Monomial, queue: &mut Vec<Monomial>, mons: &mut Vec<Monomial>| {
        if let std::collections::hash_map::Entry::Vacant(v) = cols.entry(m) {
            v.insert(0);
            mons.push(m);
            queue.push(m);
        }
    };
    for (k, q) in &todo {
        for (t, _) in &red.elems[*k].terms {
            visit(t.mul(q), &mut queue, &mut mons);
        }
    }
    // a row of the batch itself is the preferred pivot for its lead
    let mut own: FxHashMap<Monomial, (usize, Monomial)> = FxHashMap::default();
    for &(k, q) in &todo {
        own.entry(red.elems[k].lead.mul(&q)).or_insert((k, q));
    }
    while let Some(m) = queue.pop() {
        if let Some(&(k, q)) = own.get(&m) {
            pivots.push((k, q));
        } else if let Some(k) = red.divisors.get(&m) {
            let q = red.elems[k].lead.quotient_of(&m).expect("divides");
            pivots.push((k, q));
            for (t, _) in &red.elems[k].terms[1..] {
                visit(t.mul(&q), &mut queue, &mut mons);
            }
        }
    }
    mons.sort_unstable_by(|a, b| ring.cmp(b, a));
    for (i, m) in mons.iter().enumerate() {
        cols.insert(*m, i as u32);
    }
    let row = |k: usize, q: &Monomial| -> Vec<(u32, u32)> {
        red.elems[k].terms.iter().map(|(t, a)| (cols[&t.mul(q)], *a)).collect()
    };
    let mut pivot_rows: Vec<Option<Vec<(u32, u32)>>> = vec![None; mons.len()];
    let mut chosen: rustc_hash::FxHashSet<(usize, Monomial)> = Default::default();
    for (k, q) in &pivots {
        let r = row(*k, q);
        let c = r[0].0 as usize;
        pivot_rows[c] = Some(r);
        chosen.insert((*k, *q));
    }
    let mut rows: Vec<Vec<(u32, u32)>> = todo
        .iter()
        .filter(|m| !chosen.contains(m))
        .map(|(k, q)| row(*k, q))
        .collect();
    rows.sort_by_key(|r| r[0].0);

    // Products are accumulated unreduced in u64 and reduced when read, with a
    // full sweep before any entry could overflow.
    let p = ring.characteristic() as u64;
    let sweep_after = u64::MAX / ((p - 1) * (p - 1)) - 1;
    let mut acc = vec![0u64; mons.len()];
    let mut out = Vec::new();
    for r in rows {
        if budget.expired() {
            return Err(Error::BudgetExceeded {
                pairs_processed: 0,
                queue_size: 0,
            });
        }
        let start = r[0].0 as usize;
        for &(c, a) in &r {
            acc[c as usize] = a as u64;
        }
        let mut result = Vec::new();
        let mut pending = 0u64;
        for c in start..mons.len() {
            let v = (acc[c] % p) as u32;
            acc[c] = 0;
            if v == 0 {
                continue;
            }
            match &pivot_rows[c] {
                Some(row) => {
                    let neg = f.neg(v) as u64;
                    for &(cc, a) in &row[1..] {
                        acc[cc as usize] += a as u64 * neg;
                    }
                    pending += 1;
                    if pending == sweep_after {
                        acc.iter_mut().for_each(|x| *x %= p);
                        pending = 0;
                    }
                }
                None => result.push((c as u32, v)),
            }
        }
        if result.is_empty() {
            continue;
        }
        let inv = f.inv(result[0].1);
        for t in result.iter_mut() {
            t.1 = f.mul(t.1, inv);
        }
        out.push(result.iter().map(|&(c, a)| (mons[c as usize], a)).collect());
        let c = result[0].0 as usize;
        pivot_rows[c] = Some(result);
    }
    Ok(out)
}

/// Inserts a new monic element and updates the pair set (Gebauer–Möller).
fn add_element(red: &mut Reducer, pairs: &mut Vec<Pair>, terms: Vec<(Monomial, u32)>) {
    let h = red.push(terms);
    let hl = red.elems[h].lead;
    let ring = red.ring.clone();

    // Candidate new pairs (g, h) for active g.
    let mut cand: Vec<(usize, Monomial, bool)> = (0..h)
        .filter(|&g| red.active[g])
        .map(|g| {
            let gl = red.elems[g].lead;
            (g, gl.lcm(&hl), gl.is_coprime(&hl))
        })
        .collect();

    // Chain criterion among the new pairs: drop (g,h) if its lcm is a proper
    // multiple of another new pair's lcm, or equal to an earlier kept one.
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        if cand[a].2 {
            continue;
        }
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cand[b].1.divides(&cand[a].1) && (cand[b].1 != cand[a].1 || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut fresh = Vec::new();
    for (k, (g, lcm, coprime)) in cand.drain(..).enumerate() {
        // product criterion: coprime pairs are kept for the chain test above
        // but never reduced
        if keep[k] && !coprime {
            fresh.push(Pair {
                i: g,
                j: h,
                deg: ring.degree(&lcm),
                lcm,
            });
        }
    }

    // Old pairs (g1,g2) made redundant by h.
    pairs.retain(|p| {
        if !hl.divides(&p.lcm) {
            return true;
        }
        let l1 = red.elems[p.i].lead.lcm(&hl);
        let l2 = red.elems[p.j].lead.lcm(&hl);
        l1 == p.lcm || l2 == p.lcm
    });
    pairs.extend(fresh);

    for g in 0..h {
        if red.active[g] && hl.divides(&red.elems[g].lead) {
            red.active[g] = false;
        }
    }
}
