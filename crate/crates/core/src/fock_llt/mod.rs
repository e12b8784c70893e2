//! Level-one Fock space of `U_v(sl_d^)`: partitions, the `f_i` action, the
//! `q`-wedge bar involution and canonical bases.

pub mod fock;
pub mod llt;
pub mod partition;
pub mod wedge;

pub use fock::{f_action, FockVector};
pub use llt::{
    generic_decomposition_matrix, ladder_canonical_basis, llt_canonical_basis, llt_canonical_basis_with_limit,
    shape_check, FockMatrix,
    ShapeReport,
};
pub use partition::{partitions, Partition};
