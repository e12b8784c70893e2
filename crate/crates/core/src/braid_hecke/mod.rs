//! Positive braid monoids of Weyl groups and their Iwahori-Hecke algebras.

pub mod braid;
pub mod hecke;

pub use braid::{BraidMonoid, BraidWord, GarsideNF, RegularBraidWitness};
pub use hecke::{HeckeAlgebra, HeckeElement, SpecialTarget, SpecializedElement};
