//! The degeneration of `F_l P`, `P` abelian with an `l'`-group `E` acting,
//! to the truncated symmetric algebra, and the dg version over `F_l[t]`.
//!
//! Only the algebra-level statements are verified; the Koszul-duality
//! equivalence of derived categories is not implemented.

pub mod dg;
pub mod group;
pub mod iso;

pub use dg::{dg_cohomology_check, DgAlgebra, DgElement, DgReport};
pub use group::{AbelianLGroup, GroupAlgebra, DEFAULT_GROUP_LIMIT};
pub use iso::{build_isomorphism, radical_section, Certificate, DegenerationIso, RadicalSection, TruncatedAlgebra};
