//! Exact arithmetic: Laurent and integer polynomials, fields, lattices.

pub mod decimal;
pub mod field;
pub mod intpoly;
pub mod laurent;
pub mod numtheory;
pub mod snf;
