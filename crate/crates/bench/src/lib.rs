//! Inputs shared by the benchmarks.

use motivium_core::groups::named::{alternating, dihedral, symmetric};
use motivium_core::groups::{all_subgroups, FiniteGroup, GSet};
use motivium_core::modrep::perm_module;
use motivium_core::{GModule, PrimeField};
use std::sync::Arc;

/// Permutation modules `F_p[Γ/H]` for every subgroup `H` of `group`.
pub fn coset_modules(group: &Arc<FiniteGroup>, p: u32) -> Vec<GModule> {
    let field = PrimeField::new(p).expect("prime");
    all_subgroups(group)
        .iter()
        .map(|h| perm_module(&GSet::coset_space(group, h).expect("subgroup"), field))
        .collect()
}

/// Groups used across the benchmarks, with display names.
pub fn groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    vec![
        ("S3", symmetric(3)),
        ("D4", dihedral(4)),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
    ]
}
