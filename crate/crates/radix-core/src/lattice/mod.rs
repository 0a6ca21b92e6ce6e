//! Orders and fractional ideals as integer lattices in canonical HNF.

mod algebra;
pub mod hnf;
mod order;
mod residue;

pub use algebra::{
    endomorphism_mod, endomorphism_order, frobenius_radical, mult_table, pz_saturate,
    residue_degrees, FqAlgebra,
};
pub use order::{hnf_canonical, index, index_vq, product, OrderLattice};
pub use residue::{idempotents_mod, Idempotent, ResidueRing, RESIDUE_BUDGET};
