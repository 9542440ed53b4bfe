use super::module::GModule;
use crate::error::Result;
use crate::ffarith::{solve_commutant, FMatrix};

/// Basis of `Hom(M, N)`: all `f` (a `dim N x dim M` matrix) with `f ρ_M(g) = ρ_N(g) f`
/// for every generator `g`.
pub fn hom_space(m: &GModule, n: &GModule) -> Result<Vec<FMatrix>> {
    m.check_compatible(n)?;
    let gens = m.group().generators().len();
    let pairs: Vec<(&FMatrix, &FMatrix)> = (0..gens)
        .map(|k| {
            let g = m.group().generators()[k].clone();
            let kn = n.group().index_of(&g).expect("same element set");
            (m.generator_action(k), n.action(kn))
        })
        .collect();
    solve_commutant(m.field(), n.dim(), m.dim(), &pairs)
}
