//! Finite-dimensional modular representations over `F_p`.

mod decompose;
mod endo;
mod hom;
mod module;

pub use decompose::{
    decompose, indecomposable_summands, is_indecomposable, is_isomorphic,
    isomorphic_indecomposables, trivial_multiplicity, Decomposition, Summand, DEFAULT_SEED,
};
pub use endo::{jacobson_radical, EndAlgebra};
pub use hom::hom_space;
pub use module::{perm_module, GModule};
