use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffarith::{FMatrix, PrimeField};
use crate::groups::{FiniteGroup, GSet, Subgroup};

/// A finite-dimensional `F_p[Γ]`-module given by action matrices.
///
/// The matrix of every group element is stored (indexed like
/// [`FiniteGroup::elements`]); generators are looked up through it.
#[derive(Clone)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    field: PrimeField,
    dim: usize,
    action: Arc<Vec<FMatrix>>,
}

impl GModule {
    /// Module defined by one `dim x dim` matrix per group generator.
    ///
    /// The matrices are checked to satisfy every relation of the group: the
    /// action is extended along a spanning tree of the Cayley graph and then
    /// compared on every Cayley edge. A consistent action is automatically invertible.
    pub fn new(
        group: &Arc<FiniteGroup>,
        field: PrimeField,
        dim: usize,
        generators: Vec<FMatrix>,
    ) -> Result<Self> {
        let ngens = group.generators().len();
        if generators.len() != ngens {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {ngens} generators",
                generators.len()
            )));
        }
        for (k, m) in generators.iter().enumerate() {
            if m.field() != field {
                return Err(Error::PrimeMismatch(field.p(), m.field().p()));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "action of `{}` is {}x{}, expected {dim}x{dim}",
                    group.generator_names()[k],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let action = extend_along_tree(group, field, dim, &generators);
        for e in 0..group.order() {
            for (k, m) in generators.iter().enumerate() {
                let ge = group.mul(group.generator_index(k), e);
                if action[ge] != m.mul(&action[e]) {
                    return Err(Error::NotARepresentation(format!(
                        "matrix of `{}` is inconsistent with the group relations (at element {:?})",
                        group.generator_names()[k],
                        group.element(e)
                    )));
                }
            }
        }
        Ok(Self::from_parts(group, field, dim, action))
    }

    /// Builds a module from generator matrices that are known to be consistent.
    pub(crate) fn from_generators_unchecked(
        group: &Arc<FiniteGroup>,
        field: PrimeField,
        dim: usize,
        generators: &[FMatrix],
    ) -> Self {
        let action = extend_along_tree(group, field, dim, generators);
        Self::from_parts(group, field, dim, action)
    }

    pub(crate) fn from_parts(
        group: &Arc<FiniteGroup>,
        field: PrimeField,
        dim: usize,
        action: Vec<FMatrix>,
    ) -> Self {
        debug_assert_eq!(action.len(), group.order());
        Self {
            group: Arc::clone(group),
            field,
            dim,
            action: Arc::new(action),
        }
    }

    /// Trivial module of dimension `dim`.
    pub fn trivial(group: &Arc<FiniteGroup>, field: PrimeField, dim: usize) -> Self {
        let id = FMatrix::identity(field, dim);
        Self::from_parts(group, field, dim, vec![id; group.order()])
    }

    /// One-dimensional module where generator `k` acts by `scalars[k]`.
    pub fn character(
        group: &Arc<FiniteGroup>,
        field: PrimeField,
        scalars: &[u32],
    ) -> Result<Self> {
        let gens = scalars
            .iter()
            .map(|&c| FMatrix::scalar(field, 1, c))
            .collect();
        Self::new(group, field, 1, gens)
    }

    /// Permutation module `F_p[X]` with basis the points of `X` in their canonical order.
    pub fn permutation(x: &GSet, field: PrimeField) -> Self {
        let g = x.group();
        let action = (0..g.order())
            .map(|e| FMatrix::permutation(field, &x.permutation(e)))
            .collect();
        Self::from_parts(g, field, x.size(), action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of the element with index `e`.
    pub fn action(&self, e: usize) -> &FMatrix {
        &self.action[e]
    }

    /// Matrix of generator `k`.
    pub fn generator_action(&self, k: usize) -> &FMatrix {
        &self.action[self.group.generator_index(k)]
    }

    pub fn generator_actions(&self) -> Vec<&FMatrix> {
        (0..self.group.generators().len())
            .map(|k| self.generator_action(k))
            .collect()
    }

    /// Whether every group element acts as the identity.
    pub fn is_trivial(&self) -> bool {
        (0..self.group.generators().len()).all(|k| self.generator_action(k).is_identity())
    }

    /// For a one-dimensional module, the scalar by which each generator acts.
    pub fn character_values(&self) -> Option<Vec<u32>> {
        (self.dim == 1).then(|| {
            (0..self.group.generators().len())
                .map(|k| self.generator_action(k).get(0, 0))
                .collect()
        })
    }

    /// Generator matrices flattened in order; used as a canonical sort key.
    pub fn action_key(&self) -> Vec<u32> {
        (0..self.group.generators().len())
            .flat_map(|k| self.generator_action(k).data().to_vec())
            .collect()
    }

    pub(crate) fn check_compatible(&self, other: &GModule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::PrimeMismatch(self.field.p(), other.field.p()));
        }
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Kronecker-product action on `self ⊗ other`.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.check_compatible(other)?;
        let action = (0..self.group.order())
            .map(|e| {
                let o = other
                    .group
                    .index_of(self.group.element(e))
                    .expect("same element set");
                self.action[e].kron(&other.action[o])
            })
            .collect();
        Ok(Self::from_parts(
            &self.group,
            self.field,
            self.dim * other.dim,
            action,
        ))
    }

    /// `k`-fold tensor power (`k = 0` gives the trivial module).
    pub fn tensor_power(&self, k: usize) -> GModule {
        let mut acc = GModule::trivial(&self.group, self.field, 1);
        for _ in 0..k {
            acc = acc.tensor(self).expect("same group");
        }
        acc
    }

    /// Block-diagonal action on `self ⊕ other`.
    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.check_compatible(other)?;
        let (a, b) = (self.dim, other.dim);
        let action = (0..self.group.order())
            .map(|e| {
                let o = other
                    .group
                    .index_of(self.group.element(e))
                    .expect("same element set");
                let (x, y) = (&self.action[e], &other.action[o]);
                FMatrix::from_fn(self.field, a + b, a + b, |i, j| match (i < a, j < a) {
                    (true, true) => x.get(i, j),
                    (false, false) => y.get(i - a, j - a),
                    _ => 0,
                })
            })
            .collect();
        Ok(Self::from_parts(&self.group, self.field, a + b, action))
    }

    /// Same module in the basis given by the columns of `p`: `g ↦ p^-1 ρ(g) p`.
    pub fn change_basis(&self, p: &FMatrix) -> Result<GModule> {
        let inv = p.inverse().ok_or_else(|| {
            Error::DimensionMismatch("basis change matrix is not invertible".into())
        })?;
        if p.rows() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "basis change of size {} for a module of dimension {}",
                p.rows(),
                self.dim
            )));
        }
        let action = self.action.iter().map(|m| inv.mul(m).mul(p)).collect();
        Ok(Self::from_parts(&self.group, self.field, self.dim, action))
    }

    /// Restriction to a subgroup; the result acts through `h.as_group()`.
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule> {
        if !h.as_group().is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup(format!(
                "{h:?} is not a subgroup of the acting group"
            )));
        }
        let hg = h.as_group();
        let action = hg
            .elements()
            .iter()
            .map(|g| self.action[self.group.index_of(g).expect("member")].clone())
            .collect();
        Ok(Self::from_parts(hg, self.field, self.dim, action))
    }

    /// Induction to an overgroup `g` of the acting group.
    ///
    /// The basis is `r_i ⊗ m_a` (index `i * dim + a`) for the canonical left coset
    /// representatives `r_i` of `g / H`.
    pub fn induce(&self, g: &Arc<FiniteGroup>) -> Result<GModule> {
        let h = Subgroup::from_subgroup_group(g, Arc::clone(&self.group))?;
        let cosets = GSet::coset_space(g, &h)?;
        let reps = cosets.coset_representatives().expect("coset space").to_vec();
        let (n, d) = (reps.len(), self.dim);
        let inv_reps: Vec<_> = reps.iter().map(|&r| g.element(r).inverse()).collect();
        let action = (0..g.order())
            .map(|e| {
                let mut m = FMatrix::zeros(self.field, n * d, n * d);
                for (i, &ri) in reps.iter().enumerate() {
                    let j = cosets.act(e, i);
                    // g r_i = r_j h
                    let hperm = inv_reps[j].compose(g.element(e)).compose(g.element(ri));
                    let hi = self.group.index_of(&hperm).expect("coset arithmetic");
                    let block = &self.action[hi];
                    for a in 0..d {
                        for b in 0..d {
                            m.set(j * d + a, i * d + b, block.get(a, b));
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_parts(g, self.field, n * d, action))
    }

    /// The submodule spanned by an invariant set of independent column vectors,
    /// expressed in that basis.
    pub(crate) fn submodule(&self, basis: &[Vec<u32>]) -> GModule {
        let k = basis.len();
        let b = FMatrix::from_columns(self.field, self.dim, basis);
        // k independent rows of b give a left inverse on the image.
        let pivots = b.transpose().rref().1;
        debug_assert_eq!(pivots.len(), k);
        let rows_of = |m: &FMatrix| FMatrix::from_fn(self.field, k, k, |i, j| m.get(pivots[i], j));
        let br_inv = rows_of(&b).inverse().expect("independent basis");
        let gens: Vec<FMatrix> = (0..self.group.generators().len())
            .map(|g| {
                let img = self.generator_action(g).mul(&b);
                debug_assert!({
                    let y = br_inv.mul(&rows_of(&img));
                    b.mul(&y) == img
                });
                br_inv.mul(&rows_of(&img))
            })
            .collect();
        Self::from_generators_unchecked(&self.group, self.field, k, &gens)
    }
}

/// Permutation module `F_p[X]`; same as [`GModule::permutation`].
pub fn perm_module(x: &GSet, field: PrimeField) -> GModule {
    GModule::permutation(x, field)
}

fn extend_along_tree(
    group: &FiniteGroup,
    field: PrimeField,
    dim: usize,
    generators: &[FMatrix],
) -> Vec<FMatrix> {
    let mut action = vec![FMatrix::zeros(field, 0, 0); group.order()];
    for &e in group.bfs_order() {
        action[e] = match group.parent(e) {
            None => FMatrix::identity(field, dim),
            Some((k, prev)) => generators[k].mul(&action[prev]),
        };
    }
    action
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.group.same_group(&other.group)
            && (0..self.group.order()).all(|e| {
                let o = other.group.index_of(self.group.element(e)).expect("same set");
                self.action[e] == other.action[o]
            })
    }
}

impl Eq for GModule {}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<_> = self
            .group
            .generator_names()
            .iter()
            .zip(self.generator_actions())
            .map(|(n, m)| (n.as_str(), m.to_rows()))
            .collect();
        f.debug_struct("GModule")
            .field("p", &self.field.p())
            .field("dim", &self.dim)
            .field("group_order", &self.group.order())
            .field("action", &gens)
            .finish()
    }
}
