//! Fixed inputs shared by the benchmarks.

use agcy::random::Rng;
use agcy::{Ideal, PolyRing, Result};

/// Four random quadrics in P^7: the complete intersection of degree 16.
pub fn random_quadrics(seed: u64) -> Result<Ideal> {
    let ring = PolyRing::p7();
    let mut rng = Rng::new(seed);
    let gens = (0..4).map(|_| rng.form(&ring, 2)).collect();
    Ideal::new(&ring, gens)
}

/// The cyclic-4 system, homogenized: a small non-generic Gröbner input.
pub fn cyclic4() -> Result<Ideal> {
    let ring = PolyRing::new(&["a", "b", "c", "d", "h"], 32003, agcy::MonomialOrder::Grevlex)?;
    Ideal::parse(
        &ring,
        &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-h^4"],
    )
}
