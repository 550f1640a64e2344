//! Gorenstein linkage and bilinkage.
//!
//! If `X ⊂ P^n` is arithmetically Gorenstein and `U ⊂ X` is a union of
//! components of the same dimension, the residual `V = X : U` satisfies
//! `X : V = U` and `deg X = deg U + deg V`. Two links in a row through
//! hypersurface sections of one ambient give a bilinkage.

use serde::Serialize;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::ideal::Ideal;
use crate::random::Rng;

/// Retries for degenerate random draws.
pub const LINK_RETRIES: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkDegrees {
    pub ambient: i64,
    pub input: i64,
    pub residual: i64,
}

/// One verified link `input ~ residual` through `ambient`.
#[derive(Clone, Debug)]
pub struct LinkStep {
    pub ambient: Ideal,
    pub input: Ideal,
    pub residual: Ideal,
    pub degrees: LinkDegrees,
}

/// Residual of `sub` in `ambient`, with degree additivity and the
/// involution `ambient : residual = sub` checked.
pub fn link(ambient: &Ideal, sub: &Ideal, rng: &mut Rng, budget: &Budget) -> Result<LinkStep> {
    if !sub.contains_ideal(ambient)? {
        return Err(Error::ImproperLink("ambient is not contained in the input".into()));
    }
    let ha = ambient.hilbert_with(budget)?;
    let hs = sub.hilbert_with(budget)?;
    if ha.projective_dimension != hs.projective_dimension {
        return Err(Error::ImproperLink(format!(
            "ambient has dimension {}, input {}",
            ha.projective_dimension, hs.projective_dimension
        )));
    }
    let residual = ambient.colon_generic(sub, rng, budget)?.minimal_generators()?;
    let hr = residual.hilbert_with(budget)?;
    let degrees = LinkDegrees { ambient: ha.degree, input: hs.degree, residual: hr.degree };
    if hr.projective_dimension != ha.projective_dimension || ha.degree != hs.degree + hr.degree {
        return Err(Error::ImproperLink(format!(
            "degrees {} != {} + {} (residual dimension {})",
            ha.degree, hs.degree, hr.degree, hr.projective_dimension
        )));
    }
    let back = ambient.colon_generic(&residual, rng, budget)?;
    if !back.equals(sub)? {
        return Err(Error::ImproperLink("linking back does not return the input".into()));
    }
    Ok(LinkStep { ambient: ambient.clone(), input: sub.clone(), residual, degrees })
}

/// How the ambient of a bilinkage is produced from the subvariety.
#[derive(Clone, Debug)]
pub enum AmbientRecipe {
    /// A complete intersection of random members of the input ideal in the
    /// given degrees.
    CompleteIntersection(Vec<u32>),
    /// A fixed arithmetically Gorenstein ideal contained in the input ideal.
    Fixed(Ideal),
}

impl AmbientRecipe {
    fn build(&self, sub: &Ideal, rng: &mut Rng) -> Result<(Ideal, Vec<Polynomial>)> {
        match self {
            AmbientRecipe::CompleteIntersection(degs) => {
                let mut gens = Vec::new();
                for &d in degs {
                    gens.push(sub.random_member(d, rng)?);
                }
                Ok((Ideal::new(sub.ring(), gens.clone())?, gens))
            }
            AmbientRecipe::Fixed(y) => Ok((y.clone(), Vec::new())),
        }
    }
}

/// Both steps of a bilinkage and the random choices behind them.
#[derive(Clone, Debug)]
pub struct Bilinkage {
    pub ambient: Ideal,
    pub ambient_members: Vec<Polynomial>,
    pub first_hypersurface: Polynomial,
    pub second_hypersurface: Polynomial,
    pub first: LinkStep,
    pub second: LinkStep,
    pub attempts: u32,
}

impl Bilinkage {
    pub fn result(&self) -> &Ideal {
        &self.second.residual
    }
}

/// Links `sub` through `Y ∩ {h1 = 0}` and the residual back through
/// `Y ∩ {h2 = 0}`, where `Y` comes from `recipe`, `h1` is a random member of
/// `I_sub` of degree `d1` and `h2` a random member of the residual ideal of
/// degree `d2` not vanishing on `sub`.
pub fn bilink(
    sub: &Ideal,
    recipe: &AmbientRecipe,
    d1: u32,
    d2: u32,
    rng: &mut Rng,
    budget: &Budget,
) -> Result<Bilinkage> {
    let target = sub.projective_dimension()?;
    let mut last = None;
    for attempt in 0..LINK_RETRIES {
        let mut r = rng.fork(attempt as u64);
        match bilink_once(sub, recipe, d1, d2, target, &mut r, budget) {
            Ok(mut b) => {
                b.attempts = attempt + 1;
                return Ok(b);
            }
            Err(e @ (Error::BudgetExceeded { .. } | Error::EmptyGradedPiece(_))) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    match last {
        Some(Error::NoValidHypersurface(_)) | None => Err(Error::NoValidHypersurface(LINK_RETRIES)),
        Some(e) => Err(e),
    }
}

fn bilink_once(
    sub: &Ideal,
    recipe: &AmbientRecipe,
    d1: u32,
    d2: u32,
    target: i64,
    rng: &mut Rng,
    budget: &Budget,
) -> Result<Bilinkage> {
    let (y, members) = recipe.build(sub, rng)?;
    if y.projective_dimension()? != target + 1 {
        return Err(Error::ImproperLink("ambient has the wrong dimension".into()));
    }
    let h1 = sub.random_member(d1, rng)?;
    if y.contains(&h1)? {
        return Err(Error::ImproperLink("first hypersurface contains the ambient".into()));
    }
    let first = link(&y.add_generators(&[h1.clone()])?, sub, rng, budget)?;
    let h2 = first.residual.random_member(d2, rng)?;
    if sub.contains(&h2)? {
        return Err(Error::NoValidHypersurface(1));
    }
    let second = link(&y.add_generators(&[h2.clone()])?, &first.residual, rng, budget)?;
    Ok(Bilinkage {
        ambient: y,
        ambient_members: members,
        first_hypersurface: h1,
        second_hypersurface: h2,
        first,
        second,
        attempts: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, PolyRing};

    #[test]
    fn line_in_conic_pair() {
        // Two skew lines on a quadric surface in P^3, linked through
        // the quadric and a second quadric.
        let r = PolyRing::new(&["a", "b", "c", "d"], 32003, MonomialOrder::Grevlex).unwrap();
        let l = Ideal::parse(&r, &["a", "b"]).unwrap();
        let ci = Ideal::parse(&r, &["a*c - b*d", "a*d + b*c"]).unwrap();
        let mut rng = Rng::new(1);
        let step = link(&ci, &l, &mut rng, &Budget::unlimited()).unwrap();
        assert_eq!(step.degrees, LinkDegrees { ambient: 4, input: 1, residual: 3 });
    }

    #[test]
    fn improper_link_is_rejected() {
        let r = PolyRing::new(&["a", "b", "c"], 32003, MonomialOrder::Grevlex).unwrap();
        // A line with an embedded point: linking back loses the point.
        let embedded = Ideal::parse(&r, &["a^2", "a*b"]).unwrap();
        let double = Ideal::parse(&r, &["a^2"]).unwrap();
        let mut rng = Rng::new(2);
        assert!(matches!(link(&double, &embedded, &mut rng, &Budget::unlimited()), Err(Error::ImproperLink(_))));
    }

    #[test]
    fn ambient_must_lie_in_input() {
        let r = PolyRing::new(&["a", "b", "c"], 32003, MonomialOrder::Grevlex).unwrap();
        let l = Ideal::parse(&r, &["a"]).unwrap();
        let other = Ideal::parse(&r, &["b"]).unwrap();
        let mut rng = Rng::new(3);
        assert!(link(&other, &l, &mut rng, &Budget::unlimited()).is_err());
    }
}
