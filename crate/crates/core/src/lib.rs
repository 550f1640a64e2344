//! Computer-algebra kernel for verifying arithmetically Gorenstein
//! Calabi–Yau threefolds in P^7 over prime fields.

pub mod algebra;
pub mod cremona;
pub mod error;
pub mod families;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod linkage;
pub mod matrix;
pub mod random;
pub mod report;
pub mod resolution;
pub mod smoothness;
pub mod toric;

pub use algebra::{FieldElement, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Rational};
pub use error::{Error, Result};
pub use families::{FamilyInstance, FamilySpec};
pub use groebner::Budget;
pub use ideal::Ideal;
pub use report::VerificationReport;
pub use resolution::BettiTable;
