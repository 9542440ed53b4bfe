//! Permutation groups, subgroups, coset spaces and double cosets.

mod group;
mod gset;
mod perm;
mod subgroup;

pub use group::{named, FiniteGroup, MAX_GROUP_ORDER};
pub use gset::GSet;
pub use perm::Perm;
pub use subgroup::{all_subgroups, double_cosets, Subgroup};
