use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::endo::EndAlgebra;
use super::hom::hom_space;
use super::module::GModule;
use crate::error::{Error, Result};
use crate::ffarith::{factor_with_seed, min_poly, FMatrix};

/// Seed used when a decomposition is needed internally (isomorphism tests and the like).
pub const DEFAULT_SEED: u64 = 0;

// Random endomorphisms tried before the radical certificate is computed.
const TRIES_BEFORE_CERTIFICATE: usize = 6;
const MAX_TRIES: usize = 4096;

/// One isomorphism class of indecomposable summands.
#[derive(Clone, Debug)]
pub struct Summand {
    /// A representative, in the basis produced by the splitting.
    pub module: GModule,
    pub multiplicity: usize,
    /// `k` such that `End(module) / rad ≅ F_{p^k}`.
    pub residue_degree: usize,
}

/// A complete decomposition into indecomposables, grouped by isomorphism class.
///
/// Classes are ordered by dimension, then by the flattened generator matrices of the representative.
#[derive(Clone, Debug, Default)]
pub struct Decomposition {
    summands: Vec<Summand>,
}

impl Decomposition {
    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Σ multiplicity · dim.
    pub fn total_dim(&self) -> usize {
        self.summands
            .iter()
            .map(|s| s.multiplicity * s.module.dim())
            .sum()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn count(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    /// Multiset of dimensions, sorted.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.module.dim(), s.multiplicity))
            .collect();
        d.sort_unstable();
        d
    }

    /// Whether both decompositions list the same isomorphism classes with the same multiplicities.
    pub fn same_classes(&self, other: &Decomposition) -> bool {
        if self.summands.len() != other.summands.len() {
            return false;
        }
        let mut used = vec![false; other.summands.len()];
        self.summands.iter().all(|s| {
            let hit = other.summands.iter().enumerate().position(|(i, t)| {
                !used[i]
                    && t.multiplicity == s.multiplicity
                    && t.module.dim() == s.module.dim()
                    && isomorphic_indecomposables(&s.module, &t.module)
            });
            match hit {
                Some(i) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Multiplicity of the class isomorphic to the indecomposable `m` (0 if absent).
    pub fn multiplicity_of(&self, m: &GModule) -> usize {
        self.summands
            .iter()
            .find(|s| s.module.dim() == m.dim() && isomorphic_indecomposables(&s.module, m))
            .map_or(0, |s| s.multiplicity)
    }
}

/// Complete decomposition by recursive Fitting splitting.
///
/// Random endomorphisms (from `seed`) are tried first; a module that resists
/// is certified indecomposable from the radical of its endomorphism algebra.
/// The resulting isomorphism classes do not depend on `seed`.
pub fn decompose(m: &GModule, seed: u64) -> Decomposition {
    let leaves = indecomposable_summands(m, seed);
    let mut classes: Vec<Summand> = Vec::new();
    for (module, residue_degree) in leaves {
        match classes.iter_mut().find(|c| {
            c.module.dim() == module.dim() && isomorphic_indecomposables(&c.module, &module)
        }) {
            Some(c) => c.multiplicity += 1,
            None => classes.push(Summand {
                module,
                multiplicity: 1,
                residue_degree,
            }),
        }
    }
    classes.sort_by_cached_key(|s| (s.module.dim(), s.module.action_key()));
    Decomposition { summands: classes }
}

/// Indecomposable summands (with repetition) and their residue degrees, in splitting order.
pub fn indecomposable_summands(m: &GModule, seed: u64) -> Vec<(GModule, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(w) = stack.pop() {
        if w.dim() == 0 {
            continue;
        }
        let end = EndAlgebra::of(&w);
        if end.dim() == 1 {
            leaves.push((w, 1));
            continue;
        }
        if let Some(parts) = random_split(&w, &end, &mut rng, TRIES_BEFORE_CERTIFICATE) {
            stack.extend(parts.into_iter().rev());
            continue;
        }
        if let Some(k) = end.residue_degree() {
            leaves.push((w, k));
            continue;
        }
        let parts = end
            .splitting_element()
            .and_then(|s| fitting_split(&w, s, &mut rng))
            .or_else(|| random_split(&w, &end, &mut rng, MAX_TRIES))
            .expect("a decomposable module splits along some endomorphism");
        stack.extend(parts.into_iter().rev());
    }
    leaves
}

fn random_split(
    w: &GModule,
    end: &EndAlgebra,
    rng: &mut ChaCha8Rng,
    tries: usize,
) -> Option<Vec<GModule>> {
    let field = w.field();
    for _ in 0..tries {
        let mut theta = FMatrix::zeros(field, w.dim(), w.dim());
        for b in end.basis() {
            theta.add_scaled(b, rng.random_range(0..field.p()));
        }
        if let Some(parts) = fitting_split(w, &theta, rng) {
            return Some(parts);
        }
    }
    None
}

/// Splits `w` into the generalized eigenspaces of an endomorphism along the
/// coprime prime-power factors of its minimal polynomial.
fn fitting_split(w: &GModule, theta: &FMatrix, rng: &mut ChaCha8Rng) -> Option<Vec<GModule>> {
    let mp = min_poly(theta).expect("square");
    let factors = factor_with_seed(&mp, rng.next_u64()).expect("nonzero");
    if factors.len() < 2 {
        return None;
    }
    let parts = factors
        .iter()
        .map(|(f, e)| {
            let kernel = f.pow(*e).eval_matrix(theta).nullspace();
            w.submodule(&kernel)
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(parts.iter().map(GModule::dim).sum::<usize>(), w.dim());
    Some(parts)
}

/// True iff the endomorphism algebra of `m` is local.
pub fn is_indecomposable(m: &GModule) -> Result<bool> {
    if m.dim() == 0 {
        return Err(Error::ZeroModule("indecomposability of the zero module".into()));
    }
    let end = EndAlgebra::of(m);
    Ok(end.dim() == 1 || end.is_local())
}

/// Isomorphism test for an indecomposable `m` against any `n`.
///
/// With `End(m)` local, `m ≅ n` iff `dim m = dim n` and some composite
/// `g ∘ f` of basis maps `f: m → n`, `g: n → m` is invertible: otherwise all
/// composites lie in the radical, and so does every `g ∘ f`.
pub fn isomorphic_indecomposables(m: &GModule, n: &GModule) -> bool {
    if m.dim() != n.dim() || m.check_compatible(n).is_err() {
        return false;
    }
    if m.dim() == 0 {
        return true;
    }
    let there = hom_space(m, n).expect("compatible");
    if there.is_empty() {
        return false;
    }
    let back = hom_space(n, m).expect("compatible");
    there
        .iter()
        .any(|f| back.iter().any(|g| g.mul(f).is_invertible()))
}

/// Whether an invertible intertwiner `m → n` exists.
pub fn is_isomorphic(m: &GModule, n: &GModule) -> Result<bool> {
    m.check_compatible(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m == n {
        return Ok(true);
    }
    let dm = decompose(m, DEFAULT_SEED);
    if dm.summands().len() == 1 && dm.count() == 1 {
        return Ok(isomorphic_indecomposables(m, n));
    }
    let dn = decompose(n, DEFAULT_SEED);
    Ok(dm.same_classes(&dn))
}

/// Multiplicity of the trivial one-dimensional module among the indecomposable summands.
pub fn trivial_multiplicity(m: &GModule) -> usize {
    decompose(m, DEFAULT_SEED)
        .summands()
        .iter()
        .filter(|s| s.module.dim() == 1 && s.module.is_trivial())
        .map(|s| s.multiplicity)
        .sum()
}
