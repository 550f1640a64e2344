//! Homogeneous ideals and the operations linkage is built from.

use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;

use crate::algebra::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{groebner, groebner_truncated, Budget, GroebnerBasis};
use crate::hilbert::{monomial_numerator, HilbertData};
use crate::linalg::Echelon;
use crate::random::Rng;

/// Default cap on the number of colon steps in a saturation.
pub const SATURATION_CAP: u32 = 20;

/// An ideal given by homogeneous generators, with a lazily computed reduced
/// Gröbner basis and Hilbert data.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
    hilbert: OnceLock<HilbertData>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring).field("gens", &self.gens).finish()
    }
}

impl Ideal {
    /// Drops zero generators; rejects inhomogeneous ones.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            kept.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
            hilbert: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| crate::algebra::parse::parse(s, ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new()).expect("empty ideal")
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![Polynomial::constant(ring, 1)]).expect("unit ideal")
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &Arc<PolyRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generator degrees, in generator order.
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.homogeneous_degree().expect("homogeneous")).collect()
    }

    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_with(&Budget::unlimited())
    }

    pub fn groebner_with(&self, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner(&self.ring, &self.gens, budget)?);
        Ok(self.gb.get_or_init(|| gb).clone())
    }

    pub fn hilbert(&self) -> Result<HilbertData> {
        self.hilbert_with(&Budget::unlimited())
    }

    pub fn hilbert_with(&self, budget: &Budget) -> Result<HilbertData> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h.clone());
        }
        if !self.ring.is_standard_graded() {
            return Err(Error::Invalid("Hilbert series needs the standard grading".into()));
        }
        let gb = self.groebner_with(budget)?;
        let h = HilbertData::from_numerator(monomial_numerator(&gb.lead_monomials()), self.ring.nvars());
        Ok(self.hilbert.get_or_init(|| h).clone())
    }

    pub fn projective_dimension(&self) -> Result<i64> {
        Ok(self.hilbert()?.projective_dimension)
    }

    pub fn degree(&self) -> Result<i64> {
        Ok(self.hilbert()?.degree)
    }

    /// `dim_k (R/I)_m`.
    pub fn hilbert_function(&self, m: u32) -> Result<i64> {
        Ok(self.hilbert()?.hilbert_function(m))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.groebner()?.contains(f))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.groebner()?.normal_form(f))
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let gb = self.groebner()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    /// Graded equality, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner()?.polys() == other.groebner()?.polys())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.try_mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J` via `t·I + (s - t)·J` eliminated in `t` and dehomogenized at
    /// `s = 1`; both auxiliary variables have degree 1 so everything stays
    /// homogeneous.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        let n = self.ring.nvars();
        let t = self.ring.fresh_name("t");
        let s = self.ring.fresh_name("s");
        let big = self
            .ring
            .prepend(&[t.as_str()], &[1], MonomialOrder::Grevlex)?
            .append(&[s.as_str()], &[1], MonomialOrder::Elimination(1))?;
        let lift: Vec<usize> = (1..=n).collect();
        let tv = Polynomial::var(&big, 0);
        let s_minus_t = &Polynomial::var(&big, n + 1) - &tv;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&tv * &g.rename_into(&big, &lift)?);
        }
        for g in &other.gens {
            gens.push(&s_minus_t * &g.rename_into(&big, &lift)?);
        }
        let gb = groebner(&big, &gens, budget)?;
        let mut images: Vec<Polynomial> = vec![Polynomial::zero(&self.ring)];
        images.extend((0..n).map(|i| Polynomial::var(&self.ring, i)));
        images.push(Polynomial::constant(&self.ring, 1));
        let mut out = Vec::new();
        for g in gb.polys() {
            if g.terms().iter().all(|(m, _)| m.exp(0) == 0) {
                out.push(g.substitute(&images)?);
            }
        }
        Ideal::new(&self.ring, out)
    }

    /// `I : (g)` for a single homogeneous `g`.
    ///
    /// With a new variable `y` of weight `deg g` placed last in grevlex,
    /// `J = I + (y - g)` satisfies `I : g = φ(J : y)` with `φ(y) = g`, and a
    /// basis of `J : y` comes from dividing basis elements of `J` by `y` once.
    pub fn colon_principal(&self, g: &Polynomial, budget: &Budget) -> Result<Ideal> {
        self.colon_by_element(g, false, budget)
    }

    /// `I : g^∞`, by the same construction dividing out all powers of `y`.
    pub fn saturate_principal(&self, g: &Polynomial, budget: &Budget) -> Result<Ideal> {
        self.colon_by_element(g, true, budget)
    }

    fn colon_by_element(&self, g: &Polynomial, saturate: bool, budget: &Budget) -> Result<Ideal> {
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let d = g.homogeneous_degree()?;
        if self.ring.order() != MonomialOrder::Grevlex {
            return Err(Error::Invalid("colon by an element needs a grevlex ring".into()));
        }
        let n = self.ring.nvars();
        let y = self.ring.fresh_name("y");
        let big = self.ring.append(&[y.as_str()], &[d], MonomialOrder::Grevlex)?;
        let lift: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|f| f.rename_into(&big, &lift))
            .collect::<Result<_>>()?;
        gens.push(&Polynomial::var(&big, n) - &g.rename_into(&big, &lift)?);
        let gb = groebner(&big, &gens, budget)?;
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&self.ring, i)).collect();
        images.push(g.clone());
        let mut out = Vec::with_capacity(gb.len());
        for f in gb.polys() {
            let k = f.terms().iter().map(|(m, _)| m.exp(n)).min().unwrap_or(0);
            let k = if saturate { k } else { k.min(1) };
            let divided: Vec<(Monomial, u32)> = f
                .terms()
                .iter()
                .map(|&(m, c)| (m.quotient_of_var(n, k), c))
                .collect();
            let divided = Polynomial::from_terms(&big, divided);
            out.push(divided.substitute(&images)?);
        }
        Ideal::new(&self.ring, out)
    }

    /// `I : J = ∩_g (I : g)` over the generators `g` of `J`.
    pub fn colon(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let c = self.colon_principal(g, budget)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c, budget)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `I : J` through a single random combination `h` of the generators of
    /// `J` (grouped by degree). `I : h ⊇ I : J` always; equality is
    /// certified by checking `(I : h)·J ⊆ I`. Falls back to [`Ideal::colon`]
    /// if certification fails, so the result is exact either way.
    pub fn colon_generic(&self, other: &Ideal, rng: &mut Rng, budget: &Budget) -> Result<Ideal> {
        let degs = other.degrees();
        let Some(&top) = degs.iter().min() else {
            return Ok(Ideal::unit(&self.ring));
        };
        // Combine the lowest-degree generators only; homogeneous combinations
        // of the others would need degree padding.
        let low: Vec<Polynomial> = other
            .gens
            .iter()
            .zip(&degs)
            .filter(|(_, &d)| d == top)
            .map(|(g, _)| g.clone())
            .collect();
        let h = rng.combination(&self.ring, &low);
        if !h.is_zero() {
            let k = self.colon_principal(&h, budget)?;
            if k.product_contained_in(other, self)? {
                return Ok(k);
            }
        }
        self.colon(other, budget)
    }

    /// Whether `self · other ⊆ target`.
    pub fn product_contained_in(&self, other: &Ideal, target: &Ideal) -> Result<bool> {
        let gb = target.groebner()?;
        for a in &self.gens {
            for b in &other.gens {
                if !gb.contains(&a.try_mul(b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `I : J^∞` by iterated colons until graded equality.
    pub fn saturate(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        self.saturate_capped(other, SATURATION_CAP, budget)
    }

    pub fn saturate_capped(&self, other: &Ideal, cap: u32, budget: &Budget) -> Result<Ideal> {
        let mut cur = self.clone();
        for _ in 0..cap {
            let next = cur.colon(other, budget)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::SaturationCap(cap))
    }

    /// Saturation by the irrelevant ideal through a random linear form `ℓ`:
    /// `I : ℓ^∞` equals `I : m^∞` unless `ℓ` lies in an associated prime of
    /// the saturation, which a random form avoids with high probability.
    pub fn saturate_irrelevant(&self, rng: &mut Rng, budget: &Budget) -> Result<Ideal> {
        let l = rng.form(&self.ring, 1);
        self.saturate_principal(&l, budget)
    }

    /// `I ∩ k[x_k, ..., x_{n-1}]`, returned in the smaller ring.
    pub fn eliminate(&self, k: usize, budget: &Budget) -> Result<Ideal> {
        let n = self.ring.nvars();
        if k > n {
            return Err(Error::Invalid(format!("cannot eliminate {k} of {n} variables")));
        }
        let elim = self.ring.with_order(MonomialOrder::Elimination(k))?;
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.reorder(&elim)).collect::<Result<_>>()?;
        let gb = groebner(&elim, &gens, budget)?;
        let names: Vec<&str> = self.ring.names()[k..].iter().map(|s| s.as_str()).collect();
        let small = PolyRing::weighted(&names, &self.ring.weights()[k..], self.ring.characteristic(), MonomialOrder::Grevlex)?;
        let mut map = vec![0usize; n];
        for (i, slot) in map.iter_mut().enumerate().skip(k) {
            *slot = i - k;
        }
        let mut out = Vec::new();
        for g in gb.polys() {
            if g.terms().iter().all(|(m, _)| (0..k).all(|i| m.exp(i) == 0)) {
                out.push(g.rename_into(&small, &map)?);
            }
        }
        Ideal::new(&small, out)
    }

    /// `dim_k I_d`, from a basis truncated at degree `d` unless a full basis
    /// is already cached.
    pub fn graded_piece_dim(&self, d: u32) -> Result<u64> {
        let leads = self.leads_through(d)?;
        let total = self.ring.monomial_count(d);
        let hd = HilbertData::from_numerator(monomial_numerator(&leads), self.ring.nvars());
        Ok(total - hd.hilbert_function(d) as u64)
    }

    fn leads_through(&self, d: u32) -> Result<Vec<Monomial>> {
        let gb = match self.gb.get() {
            Some(gb) => gb.clone(),
            None => Arc::new(groebner_truncated(&self.ring, &self.gens, d, &Budget::unlimited())?),
        };
        Ok(gb
            .lead_monomials()
            .into_iter()
            .filter(|m| self.ring.degree(m) <= d)
            .collect())
    }

    /// A basis of `I_d`: `m - NF(m)` for the monomials `m` of degree `d` in
    /// the lead-term ideal.
    pub fn graded_piece_basis(&self, d: u32) -> Result<Vec<Polynomial>> {
        let gb = match self.gb.get() {
            Some(gb) => gb.clone(),
            None => Arc::new(groebner_truncated(&self.ring, &self.gens, d, &Budget::unlimited())?),
        };
        let leads: Vec<Monomial> = gb.lead_monomials();
        let mut out = Vec::new();
        for m in Monomial::all_of_degree(self.ring.nvars(), d) {
            if leads.iter().any(|l| l.divides(&m)) {
                let mp = Polynomial::term(&self.ring, m, 1);
                out.push(&mp - &gb.normal_form(&mp));
            }
        }
        out.sort_by(|a, b| self.ring.cmp(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
        Ok(out)
    }

    /// Uniformly random element of `I_d`.
    pub fn random_member(&self, d: u32, rng: &mut Rng) -> Result<Polynomial> {
        let basis = self.graded_piece_basis(d)?;
        if basis.is_empty() {
            return Err(Error::EmptyGradedPiece(d));
        }
        Ok(rng.combination(&self.ring, &basis))
    }

    /// A minimal generating subset of the given generators, by degree-wise
    /// linear algebra modulo the lower-degree part.
    pub fn minimal_generators(&self) -> Result<Ideal> {
        let mut order: Vec<usize> = (0..self.gens.len()).collect();
        let degs = self.degrees();
        order.sort_by_key(|&i| degs[i]);
        let mut chosen: Vec<Polynomial> = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let d = degs[order[k]];
            let batch: Vec<usize> = order[k..].iter().copied().take_while(|&i| degs[i] == d).collect();
            k += batch.len();
            let lower = groebner_truncated(&self.ring, &chosen, d, &Budget::unlimited())?;
            let mut ech = Echelon::new(self.ring.field());
            let mut cols: FxHashMap<Monomial, usize> = FxHashMap::default();
            for &i in &batch {
                let nf = lower.normal_form(&self.gens[i]);
                let row: Vec<(usize, u32)> = nf
                    .terms()
                    .iter()
                    .map(|(m, c)| {
                        let next = cols.len();
                        (*cols.entry(*m).or_insert(next), *c)
                    })
                    .collect();
                if ech.insert_sparse(row) {
                    chosen.push(self.gens[i].clone());
                }
            }
        }
        Ideal::new(&self.ring, chosen)
    }

    /// Same generators viewed in another ring with identical variable names.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.reorder(target)).collect::<Result<_>>()?;
        Ideal::new(target, gens)
    }

    /// Applies a substitution `x_i ↦ images[i]` to every generator.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Ideal> {
        let target = images.first().map(|p| p.ring().clone()).unwrap_or_else(|| self.ring.clone());
        let gens = self.gens.iter().map(|g| g.substitute(images)).collect::<Result<_>>()?;
        Ideal::new(&target, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> Arc<PolyRing> {
        PolyRing::p7()
    }

    fn id(s: &[&str]) -> Ideal {
        Ideal::parse(&r(), s).unwrap()
    }

    fn b() -> Budget {
        Budget::unlimited()
    }

    #[test]
    fn trivial_colons() {
        assert!(id(&["x0^2"]).colon(&id(&["x0"]), &b()).unwrap().equals(&id(&["x0"])).unwrap());
        assert!(id(&["x0*x1"]).colon(&id(&["x0"]), &b()).unwrap().equals(&id(&["x1"])).unwrap());
        assert!(id(&["x0*x1"]).colon(&id(&["x2"]), &b()).unwrap().equals(&id(&["x0*x1"])).unwrap());
    }

    #[test]
    fn intersections() {
        let i = id(&["x0"]).intersect(&id(&["x1"]), &b()).unwrap();
        assert!(i.equals(&id(&["x0*x1"])).unwrap());
        let i = id(&["x0", "x1"]).intersect(&id(&["x2", "x3"]), &b()).unwrap();
        assert!(i.equals(&id(&["x0*x2", "x0*x3", "x1*x2", "x1*x3"])).unwrap());
        let j = id(&["x0^2 - x1*x2", "x3^3"]);
        assert!(j.intersect(&j, &b()).unwrap().equals(&j).unwrap());
    }

    #[test]
    fn saturations() {
        let s = id(&["x0^2*x1"]).saturate(&id(&["x0"]), &b()).unwrap();
        assert!(s.equals(&id(&["x1"])).unwrap());
        let j = id(&["x0*x1 - x2^2"]);
        assert!(j.saturate(&Ideal::unit(&r()), &b()).unwrap().equals(&j).unwrap());
        let p = id(&["x0^2*x1"]).saturate_principal(&Polynomial::var(&r(), 0), &b()).unwrap();
        assert!(p.equals(&id(&["x1"])).unwrap());
    }

    #[test]
    fn eliminate_twisted_parametrization() {
        // t first; eliminating it from (t*x0 - x1, t*x1 - x2) leaves x0*x2 - x1^2
        let ring = PolyRing::standard(4, 32003).unwrap();
        let names = ["t", "a", "b", "c"];
        let ring = PolyRing::new(&names, ring.characteristic(), MonomialOrder::Grevlex).unwrap();
        let i = Ideal::parse(&ring, &["t*a - b*c", "t*b - c^2"]).unwrap();
        let e = i.eliminate(1, &b()).unwrap();
        let target = crate::algebra::parse::parse("a*c^2 - b^2*c", e.ring()).unwrap();
        assert!(e.contains(&target).unwrap());
    }

    #[test]
    fn graded_pieces() {
        let pi = id(&["x4", "x5", "x6", "x7"]);
        assert_eq!(pi.graded_piece_dim(1).unwrap(), 4);
        assert_eq!(pi.graded_piece_dim(2).unwrap(), 26);
        assert_eq!(pi.graded_piece_basis(2).unwrap().len(), 26);
        let mut rng = Rng::new(3);
        let q = pi.random_member(2, &mut rng).unwrap();
        assert!(pi.contains(&q).unwrap());
        assert!(matches!(id(&["x0^2"]).random_member(1, &mut rng), Err(Error::EmptyGradedPiece(1))));
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let i = id(&["x0^2", "x0^2*x1", "x1^2", "x0^2 + x1^2", "x2^3"]);
        let m = i.minimal_generators().unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.equals(&i).unwrap());
    }
}
