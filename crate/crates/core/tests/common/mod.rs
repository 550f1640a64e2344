//! Shared strategies, property bodies and reference tables for the core
//! integration tests. The property bodies are plain functions so that the
//! proptest suite and the acceptance runner exercise the same code.

#![allow(dead_code)]

use std::sync::Arc;

use agcy::groebner::Budget;
use agcy::linkage::link;
use agcy::random::Rng;
use agcy::resolution::{free_resolution, schreyer_resolution};
use agcy::{BettiTable, Ideal, Monomial, PolyRing, Polynomial};
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const P: u32 = 32003;

pub fn ring(n: usize) -> Arc<PolyRing> {
    PolyRing::standard(n, P).unwrap()
}

/// Generators as `(degree, [(coefficient, monomial index)])`.
pub type IdealSpec = Vec<(u32, Vec<(u32, Index)>)>;

/// Sparse homogeneous generators of degree 1 to 3.
pub fn ideal_spec(max_gens: usize) -> impl Strategy<Value = IdealSpec> {
    prop::collection::vec((1u32..=3, prop::collection::vec((1u32..P, any::<Index>()), 1..=4)), 1..=max_gens)
}

/// As [`ideal_spec`] with degrees 2 and 3 only, so that the quotient keeps
/// some dimension and the resolutions stay short.
pub fn nonlinear_spec(max_gens: usize) -> impl Strategy<Value = IdealSpec> {
    prop::collection::vec((2u32..=3, prop::collection::vec((1u32..P, any::<Index>()), 1..=4)), 1..=max_gens)
}

pub fn poly_from(ring: &Arc<PolyRing>, d: u32, terms: &[(u32, Index)]) -> Polynomial {
    let monos = Monomial::all_of_degree(ring.nvars(), d);
    let terms = terms.iter().map(|(c, i)| (*i.get(&monos), *c)).collect();
    Polynomial::from_terms(ring, terms)
}

/// The nonzero generators of `spec`, or `None` if there are none.
pub fn realize(ring: &Arc<PolyRing>, spec: &IdealSpec) -> Option<Ideal> {
    let gens: Vec<Polynomial> = spec.iter().map(|(d, t)| poly_from(ring, *d, t)).filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return None;
    }
    Some(Ideal::new(ring, gens).unwrap())
}

fn err(e: agcy::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn sorted_monic(polys: &[Polynomial]) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(|p| p.monic().to_string()).collect();
    v.sort();
    v
}

/// S-polynomial of two monic polynomials.
fn s_poly(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (f, g) = (f.monic(), g.monic());
    let (lf, lg) = (*f.lead_monomial().unwrap(), *g.lead_monomial().unwrap());
    let l = lf.lcm(&lg);
    let a = f.mul_term(&lf.quotient_of(&l).unwrap(), 1);
    let b = g.mul_term(&lg.quotient_of(&l).unwrap(), 1);
    a.try_sub(&b).unwrap()
}

/// The reduced basis is a basis (generators and all S-polynomials reduce to
/// zero) and does not depend on the order of the generators or on adding
/// redundant members.
pub fn gb_confluence_and_uniqueness(spec: &IdealSpec, seed: u64) -> Result<(), TestCaseError> {
    let r = ring(4);
    let Some(ideal) = realize(&r, spec) else { return Ok(()) };
    let gb = ideal.groebner().map_err(err)?;
    for g in ideal.gens() {
        prop_assert!(gb.normal_form(g).is_zero(), "generator {g} does not reduce to 0");
    }
    let polys = gb.polys();
    for (i, f) in polys.iter().enumerate() {
        for g in &polys[i + 1..] {
            let s = s_poly(f, g);
            prop_assert!(gb.normal_form(&s).is_zero(), "S({f}, {g}) does not reduce to 0");
        }
    }
    let mut rng = Rng::new(seed);
    let mut gens: Vec<Polynomial> = ideal.gens().to_vec();
    let extra = gens[rng.below(gens.len())].try_mul(&rng.form(&r, 1)).unwrap();
    gens.push(extra);
    let combo = rng.combination(&r, &gens[..1]);
    gens.push(combo);
    for i in (1..gens.len()).rev() {
        gens.swap(i, rng.below(i + 1));
    }
    let other = Ideal::new(&r, gens).unwrap().groebner().map_err(err)?;
    prop_assert_eq!(sorted_monic(gb.polys()), sorted_monic(other.polys()));
    Ok(())
}

/// Colon and saturation identities for `I` and random forms `f`, `g`.
pub fn colon_saturation_identities(spec: &IdealSpec, seed: u64, df: u32, dg: u32) -> Result<(), TestCaseError> {
    let r = ring(4);
    let Some(i) = realize(&r, spec) else { return Ok(()) };
    let b = Budget::unlimited();
    let mut rng = Rng::new(seed);
    let f = rng.form(&r, df);
    let g = rng.form(&r, dg);

    let i_f = i.colon_principal(&f, &b).map_err(err)?;
    prop_assert!(i_f.contains_ideal(&i).map_err(err)?, "I is not inside I : f");
    for h in i_f.gens() {
        prop_assert!(i.contains(&h.try_mul(&f).unwrap()).map_err(err)?, "f (I : f) is not inside I");
    }

    let fg = f.try_mul(&g).unwrap();
    let lhs = i.colon_principal(&fg, &b).map_err(err)?;
    let rhs = i_f.colon_principal(&g, &b).map_err(err)?;
    prop_assert!(lhs.equals(&rhs).map_err(err)?, "I : fg != (I : f) : g");

    let j = Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap();
    let i_j = i.colon(&j, &b).map_err(err)?;
    let i_g = i.colon_principal(&g, &b).map_err(err)?;
    let meet = i_f.intersect(&i_g, &b).map_err(err)?;
    prop_assert!(i_j.equals(&meet).map_err(err)?, "I : (f, g) != (I : f) ∩ (I : g)");

    let sat = i.saturate_principal(&f, &b).map_err(err)?;
    let mut chain = i.clone();
    loop {
        let next = chain.colon_principal(&f, &b).map_err(err)?;
        if next.equals(&chain).map_err(err)? {
            break;
        }
        chain = next;
    }
    prop_assert!(sat.equals(&chain).map_err(err)?, "I : f^∞ differs from the stable colon chain");
    let again = sat.colon_principal(&f, &b).map_err(err)?;
    prop_assert!(again.equals(&sat).map_err(err)?, "(I : f^∞) : f != I : f^∞");
    Ok(())
}

/// A line in P^3 linked through a complete intersection of type `(d1, d2)`
/// containing it: the residual has degree `d1 d2 - 1` and links back.
pub fn line_link(seed: u64, d1: u32, d2: u32) -> Result<(), TestCaseError> {
    let r = ring(4);
    let mut rng = Rng::new(seed);
    let line = Ideal::new(&r, vec![rng.form(&r, 1), rng.form(&r, 1)]).unwrap();
    let ci = Ideal::new(&r, vec![line.random_member(d1, &mut rng).unwrap(), line.random_member(d2, &mut rng).unwrap()]).unwrap();
    let h = ci.hilbert().map_err(err)?;
    prop_assume!(h.projective_dimension == 1);
    let step = link(&ci, &line, &mut rng, &Budget::unlimited()).map_err(err)?;
    let d = (d1 * d2) as i64;
    prop_assert_eq!((step.degrees.ambient, step.degrees.input, step.degrees.residual), (d, 1, d - 1));
    let back = ci.colon(&step.residual, &Budget::unlimited()).map_err(err)?;
    prop_assert!(back.equals(&line).map_err(err)?, "linking back does not return the line");
    let residual = step.residual.hilbert().map_err(err)?;
    prop_assert_eq!(residual.projective_dimension, 1);
    prop_assert_eq!(h.degree, residual.degree + 1);
    Ok(())
}

/// The minimal resolution is a complex presenting `I`, and its alternating
/// Betti sum equals the Hilbert numerator computed from a Gröbner basis.
/// The non-minimal Schreyer frame has the same Euler characteristic.
pub fn resolution_euler(spec: &IdealSpec, seed: u64) -> Result<(), TestCaseError> {
    let r = ring(4);
    let Some(i) = realize(&r, spec) else { return Ok(()) };
    let b = Budget::unlimited();
    let res = free_resolution(&i, &mut Rng::new(seed), &b).map_err(err)?;
    res.check_complex().map_err(err)?;
    prop_assert!(res.presents(&i).map_err(err)?, "resolution does not present I");
    prop_assert!(res.length() <= 4);
    let mut numerator = i.hilbert().map_err(err)?.numerator;
    while numerator.last() == Some(&0) {
        numerator.pop();
    }
    prop_assert_eq!(res.betti().hilbert_numerator(), numerator.clone());
    let frame = schreyer_resolution(&i, &mut Rng::new(seed), &b).map_err(err)?;
    frame.check_complex().map_err(err)?;
    prop_assert_eq!(frame.betti().hilbert_numerator(), numerator);
    prop_assert!(res.betti().dominated_by(frame.betti()));
    Ok(())
}

/// Case counts of the property suites; 220 in total.
pub const GB_CASES: u32 = 80;
pub const COLON_CASES: u32 = 50;
pub const LINK_CASES: u32 = 30;
pub const RESOLUTION_CASES: u32 = 60;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Runs every property suite with a deterministic generator; returns
/// `(suite, cases, outcome)` per suite.
pub fn run_property_suites() -> Vec<(&'static str, u32, Result<(), String>)> {
    let mut out = Vec::new();
    let r = runner(GB_CASES).run(&(ideal_spec(4), any::<u64>()), |(s, seed)| gb_confluence_and_uniqueness(&s, seed));
    out.push(("gb_confluence_uniqueness", GB_CASES, r.map_err(|e| e.to_string())));
    let r = runner(COLON_CASES)
        .run(&(ideal_spec(3), any::<u64>(), 1u32..=2, 1u32..=2), |(s, seed, df, dg)| {
            colon_saturation_identities(&s, seed, df, dg)
        });
    out.push(("colon_saturation", COLON_CASES, r.map_err(|e| e.to_string())));
    let r = runner(LINK_CASES).run(&(any::<u64>(), 2u32..=3, 2u32..=3), |(seed, d1, d2)| line_link(seed, d1, d2));
    out.push(("linkage_involution_degree", LINK_CASES, r.map_err(|e| e.to_string())));
    let r = runner(RESOLUTION_CASES).run(&(nonlinear_spec(4), any::<u64>()), |(s, seed)| resolution_euler(&s, seed));
    out.push(("resolution_euler_characteristic", RESOLUTION_CASES, r.map_err(|e| e.to_string())));
    out
}

/// Koszul complex of four linear forms.
pub fn koszul_linear_space() -> BettiTable {
    BettiTable::from_modules(&[&[(4, 1)], &[(6, 2)], &[(4, 3)], &[(1, 4)]], true)
}

/// Displayed intermediate tables of the chain through `Y_{2,2,2}`.
pub fn displayed_g_linear() -> BettiTable {
    BettiTable::from_modules(&[&[(1, 3), (3, 2), (1, 1)], &[(7, 4), (3, 3)], &[(1, 6), (9, 5)], &[(4, 6)]], false)
}

pub fn displayed_x_linear() -> BettiTable {
    BettiTable::from_modules(
        &[&[(5, 3), (3, 2)], &[(3, 5), (12, 4), (1, 3)], &[(3, 7), (4, 6), (7, 5)], &[(1, 8), (3, 7), (1, 6)]],
        false,
    )
}

/// Displayed resolution of a del Pezzo surface of degree 6 in P^7.
pub fn displayed_del_pezzo() -> BettiTable {
    BettiTable::from_modules(&[&[(9, 2)], &[(16, 3)], &[(9, 4)], &[(1, 6)]], true)
}

/// Displayed intermediate tables of the chain through `Y_{2,2,3}`.
pub fn displayed_g_del_pezzo() -> BettiTable {
    BettiTable::from_modules(&[&[(2, 3), (3, 2)], &[(12, 5), (3, 4)], &[(17, 6)], &[(6, 7)]], false)
}

pub fn displayed_x_del_pezzo() -> BettiTable {
    BettiTable::from_modules(
        &[&[(8, 3), (2, 2)], &[(1, 6), (4, 5), (18, 4)], &[(2, 8), (2, 7), (3, 6), (12, 5)], &[(3, 8), (2, 7)]],
        false,
    )
}
