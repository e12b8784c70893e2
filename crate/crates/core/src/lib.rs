//! Exact combinatorics of finite groups of Lie type: root data and Weyl
//! groups, generic orders, defining-characteristic block counts, Sylow
//! structure away from the defining prime, positive braids and Hecke
//! algebras, Fock-space canonical bases, and the truncated symmetric algebra
//! model of abelian group algebras.

pub mod arith;
pub mod error;

pub use error::{Error, Result};
pub mod root_datum;
pub mod weyl;
pub mod generic_order;
pub mod defining_char;
pub mod ell_local;
pub mod braid_hecke;
pub mod fock_llt;
pub mod degeneration;
