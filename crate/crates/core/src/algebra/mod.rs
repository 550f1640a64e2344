//! Exact arithmetic: prime fields, rationals, monomials, sparse polynomials
//! and their text form.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ring;

pub use field::{FieldElement, PrimeField, DEFAULT_CHARACTERISTIC};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Polynomial;
pub use rational::Rational;
pub use ring::PolyRing;
