//! Artin motives as permutation-module summands over a fixed finite Galois group.
//!
//! A [`GaloisContext`] fixes `Γ = Gal(E/F)` and a finite lattice of
//! intermediate fields, each named by a label and presented by its subgroup
//! `Γ_K`. An [`ArtinMotive`] over `K` is an `F_p[Γ_K]`-module.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::ffarith::PrimeField;
use crate::groups::{FiniteGroup, GSet, Subgroup};
use crate::modrep::{decompose, is_isomorphic, perm_module, Decomposition, GModule};

/// Label of the base field.
pub const BASE: &str = "F";
/// Label of the top of the lattice.
pub const TOP: &str = "E";

#[derive(Clone, Debug)]
pub struct FieldEntry {
    pub subgroup: Subgroup,
    pub p_special: bool,
}

/// `Gal(E/F)` together with a labelled lattice of intermediate fields.
#[derive(Clone)]
pub struct GaloisContext {
    gamma: Arc<FiniteGroup>,
    fields: IndexMap<String, FieldEntry>,
    order: Vec<(String, String)>,
    // below[i] = labels j with K_j ⊆ K_i in the reflexive-transitive closure of the declared order
    below: Vec<BTreeSet<usize>>,
}

pub struct ContextBuilder {
    gamma: Arc<FiniteGroup>,
    fields: IndexMap<String, FieldEntry>,
    order: Vec<(String, String)>,
}

impl ContextBuilder {
    pub fn field(mut self, label: &str, subgroup: Subgroup, p_special: bool) -> Self {
        self.fields.insert(label.to_string(), FieldEntry { subgroup, p_special });
        self
    }

    /// Declares `smaller ⊆ larger`.
    pub fn contains(mut self, smaller: &str, larger: &str) -> Self {
        self.order.push((smaller.to_string(), larger.to_string()));
        self
    }

    pub fn build(self) -> Result<Arc<GaloisContext>> {
        GaloisContext::new(self.gamma, self.fields, self.order)
    }
}

impl GaloisContext {
    /// Starts a context with `F ↦ Γ` and `E ↦ 1` (neither p-special) and `F ⊆ E`.
    pub fn builder(gamma: &Arc<FiniteGroup>) -> ContextBuilder {
        ContextBuilder {
            gamma: Arc::clone(gamma),
            fields: IndexMap::new(),
            order: Vec::new(),
        }
        .field(BASE, Subgroup::whole(gamma), false)
        .field(TOP, Subgroup::trivial(gamma), false)
        .contains(BASE, TOP)
    }

    /// Validates and closes the declared order; `F ⊆ K ⊆ E` holds for every label `K`.
    ///
    /// Every subgroup must live in `gamma`; `F` must be `Γ` and `E` trivial;
    /// each declared `K ⊆ K'` needs `Γ_K' ≤ Γ_K`.
    pub fn new(
        gamma: Arc<FiniteGroup>,
        fields: IndexMap<String, FieldEntry>,
        order: Vec<(String, String)>,
    ) -> Result<Arc<Self>> {
        for (label, e) in &fields {
            if !e.subgroup.parent().same_group(&gamma) {
                return Err(Error::InvalidContext(format!(
                    "subgroup of `{label}` does not live in the Galois group"
                )));
            }
        }
        match fields.get(BASE) {
            Some(e) if e.subgroup.order() == gamma.order() => {}
            Some(_) => return Err(Error::InvalidContext("`F` must map to the whole group".into())),
            None => return Err(Error::InvalidContext("missing base field `F`".into())),
        }
        match fields.get(TOP) {
            Some(e) if e.subgroup.order() == 1 => {}
            Some(_) => return Err(Error::InvalidContext("`E` must map to the trivial subgroup".into())),
            None => return Err(Error::InvalidContext("missing top field `E`".into())),
        }
        let n = fields.len();
        let base = fields.get_index_of(BASE).expect("checked");
        let top = fields.get_index_of(TOP).expect("checked");
        // F lies below and E above every label
        let mut below: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i, base])).collect();
        for i in 0..n {
            below[top].insert(i);
        }
        for (small, large) in &order {
            let i = fields
                .get_index_of(small)
                .ok_or_else(|| Error::UnknownField(small.clone()))?;
            let j = fields
                .get_index_of(large)
                .ok_or_else(|| Error::UnknownField(large.clone()))?;
            if !fields[j].subgroup.is_subgroup_of(&fields[i].subgroup) {
                return Err(Error::InvalidContext(format!(
                    "`{small}` ⊆ `{large}` declared but Γ_{large} is not contained in Γ_{small}"
                )));
            }
            below[j].insert(i);
        }
        // transitive closure
        loop {
            let mut changed = false;
            for j in 0..n {
                let extra: BTreeSet<usize> = below[j]
                    .iter()
                    .flat_map(|&i| below[i].iter().copied())
                    .collect();
                if extra.len() > below[j].len() {
                    below[j] = extra;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Arc::new(Self {
            gamma,
            fields,
            order,
            below,
        }))
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    /// Labels in declaration order.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.fields.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn entry(&self, label: &str) -> Result<&FieldEntry> {
        self.fields
            .get(label)
            .ok_or_else(|| Error::UnknownField(label.to_string()))
    }

    pub fn subgroup(&self, label: &str) -> Result<&Subgroup> {
        Ok(&self.entry(label)?.subgroup)
    }

    pub fn is_p_special(&self, label: &str) -> Result<bool> {
        Ok(self.entry(label)?.p_special)
    }

    pub fn declared_order(&self) -> &[(String, String)] {
        &self.order
    }

    /// `small ⊆ large` in the closure of the declared order.
    pub fn declared_contains(&self, small: &str, large: &str) -> Result<bool> {
        let i = self.index(small)?;
        let j = self.index(large)?;
        Ok(self.below[j].contains(&i))
    }

    /// All pairs `(K, K')` with `K ⊆ K'` in the closed order, `K ≠ K'`.
    pub fn containments(&self) -> Vec<(&str, &str)> {
        let labels: Vec<&str> = self.labels().collect();
        let mut out = Vec::new();
        for (j, set) in self.below.iter().enumerate() {
            for &i in set {
                if i != j {
                    out.push((labels[i], labels[j]));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// First label whose subgroup equals `h`.
    pub fn label_of(&self, h: &Subgroup) -> Option<&str> {
        self.fields
            .iter()
            .find(|(_, e)| e.subgroup == *h)
            .map(|(k, _)| k.as_str())
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.fields
            .get_index_of(label)
            .ok_or_else(|| Error::UnknownField(label.to_string()))
    }

    /// Labels whose normal closure over `F` has degree divisible by `p`.
    ///
    /// The degree of the normal closure of `K` is `[Γ : core(Γ_K)]`.
    pub fn p_prime_warnings(&self, p: u32) -> Vec<String> {
        self.fields
            .iter()
            .filter_map(|(label, e)| {
                let deg = e.subgroup.core().index();
                (deg % p as usize == 0).then(|| {
                    format!("normal closure of `{label}` has degree {deg}, divisible by p = {p}")
                })
            })
            .collect()
    }

    /// Whether two contexts describe the same group, labels, subgroups and order.
    pub fn same_as(&self, other: &GaloisContext) -> bool {
        std::ptr::eq(self, other)
            || (self.gamma.same_group(&other.gamma)
                && self.fields.len() == other.fields.len()
                && self.fields.iter().zip(&other.fields).all(|((a, x), (b, y))| {
                    a == b && x.subgroup == y.subgroup && x.p_special == y.p_special
                })
                && self.below == other.below)
    }

    pub(crate) fn check_same(&self, other: &GaloisContext) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch("the Galois contexts differ".into()))
        }
    }
}

impl fmt::Debug for GaloisContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields: Vec<_> = self
            .fields
            .iter()
            .map(|(k, e)| (k.as_str(), e.subgroup.order(), e.p_special))
            .collect();
        f.debug_struct("GaloisContext")
            .field("gamma_order", &self.gamma.order())
            .field("fields", &fields)
            .field("order", &self.order)
            .finish()
    }
}

/// An Artin motive over the field `base` of a context: an `F_p[Γ_base]`-module.
#[derive(Clone, Debug)]
pub struct ArtinMotive {
    ctx: Arc<GaloisContext>,
    base: String,
    module: GModule,
    provenance: Option<String>,
}

impl ArtinMotive {
    /// The module must act through the subgroup of `base`.
    pub fn new(
        ctx: &Arc<GaloisContext>,
        base: &str,
        module: GModule,
        provenance: Option<String>,
    ) -> Result<Self> {
        let h = ctx.subgroup(base)?;
        if !module.group().same_group(h.as_group()) {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            base: base.to_string(),
            module,
            provenance,
        })
    }

    pub fn context(&self) -> &Arc<GaloisContext> {
        &self.ctx
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn field(&self) -> PrimeField {
        self.module.field()
    }

    /// The unit motive over `base`.
    pub fn tate(ctx: &Arc<GaloisContext>, base: &str, field: PrimeField) -> Result<Self> {
        let h = ctx.subgroup(base)?;
        let m = GModule::trivial(h.as_group(), field, 1);
        Self::new(ctx, base, m, Some(format!("M({base})^{base}")))
    }

    fn check_compatible(&self, other: &ArtinMotive) -> Result<()> {
        self.ctx.check_same(&other.ctx)?;
        if self.base != other.base {
            return Err(Error::ContextMismatch(format!(
                "motives over `{}` and `{}`",
                self.base, other.base
            )));
        }
        Ok(())
    }

    /// `k`-fold tensor power; `k = 0` gives the Tate motive.
    pub fn tensor_power(&self, k: usize) -> ArtinMotive {
        Self {
            ctx: Arc::clone(&self.ctx),
            base: self.base.clone(),
            module: self.module.tensor_power(k),
            provenance: None,
        }
    }

    /// A tensor inverse of an invertible motive: `A^(k-1)` for Picard order `k`.
    pub fn tensor_inverse(&self) -> Option<ArtinMotive> {
        self.picard_order()
            .map(|k| self.tensor_power(k as usize - 1))
    }

    pub fn tensor(&self, other: &ArtinMotive) -> Result<ArtinMotive> {
        self.check_compatible(other)?;
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            base: self.base.clone(),
            module: self.module.tensor(&other.module)?,
            provenance: None,
        })
    }

    pub fn direct_sum(&self, other: &ArtinMotive) -> Result<ArtinMotive> {
        self.check_compatible(other)?;
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            base: self.base.clone(),
            module: self.module.direct_sum(&other.module)?,
            provenance: None,
        })
    }

    pub fn is_isomorphic(&self, other: &ArtinMotive) -> Result<bool> {
        self.check_compatible(other)?;
        is_isomorphic(&self.module, &other.module)
    }

    /// Indecomposable summands with multiplicities.
    pub fn decompose(&self, seed: u64) -> Vec<(ArtinMotive, usize)> {
        self.decomposition(seed)
            .summands()
            .iter()
            .map(|s| {
                let m = Self {
                    ctx: Arc::clone(&self.ctx),
                    base: self.base.clone(),
                    module: s.module.clone(),
                    provenance: Some(match &self.provenance {
                        Some(p) => format!("summand of {p}"),
                        None => "summand".into(),
                    }),
                };
                (m, s.multiplicity)
            })
            .collect()
    }

    pub fn decomposition(&self, seed: u64) -> Decomposition {
        decompose(&self.module, seed)
    }

    /// Transfer to a subfield `target ⊆ base`: induction from `Γ_base` to `Γ_target`.
    pub fn corestriction_to(&self, target: &str) -> Result<ArtinMotive> {
        let to = self.ctx.subgroup(target)?;
        let from = self.ctx.subgroup(&self.base)?;
        if !from.is_subgroup_of(to) {
            return Err(Error::NotSubgroup(format!(
                "Γ_{} is not contained in Γ_{target}",
                self.base
            )));
        }
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            base: target.to_string(),
            module: self.module.induce(to.as_group())?,
            provenance: self
                .provenance
                .as_ref()
                .map(|p| format!("cor_{}/{target}({p})", self.base)),
        })
    }

    /// Corestriction down to `F`.
    pub fn corestriction(&self) -> Result<ArtinMotive> {
        self.corestriction_to(BASE)
    }

    /// Extension of scalars to `k ⊇ base`: restriction to `Γ_k`.
    pub fn base_change(&self, k: &str) -> Result<ArtinMotive> {
        let to = self.ctx.subgroup(k)?;
        let from = self.ctx.subgroup(&self.base)?;
        if !to.is_subgroup_of(from) {
            return Err(Error::NotSubgroup(format!(
                "Γ_{k} is not contained in Γ_{}",
                self.base
            )));
        }
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            base: k.to_string(),
            module: self.module.restrict(to)?,
            provenance: self.provenance.as_ref().map(|p| format!("({p})_{k}")),
        })
    }

    /// Order in the Picard group: for a rank-one motive the order of its
    /// character, otherwise `None` (not invertible).
    pub fn picard_order(&self) -> Option<u64> {
        if self.dim() != 1 {
            return None;
        }
        let f = self.field();
        Some(
            self.module
                .generator_actions()
                .iter()
                .map(|m| f.order(m.get(0, 0)).expect("invertible action"))
                .fold(1, lcm),
        )
    }

    /// Labels `K ⊇ base` over which the motive becomes a sum of Tate motives.
    pub fn splitting_fields(&self) -> Vec<String> {
        let from = self.ctx.subgroup(&self.base).expect("valid base");
        self.ctx
            .fields
            .iter()
            .filter(|(_, e)| e.subgroup.is_subgroup_of(from))
            .filter(|(_, e)| {
                e.subgroup
                    .generators()
                    .iter()
                    .all(|g| self.module.action(self.module.group().index_of(g).expect("member")).is_identity())
            })
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Whether every indecomposable summand of `self` occurs in `ambient` with at least the same multiplicity.
    pub fn is_summand_of(&self, ambient: &ArtinMotive) -> Result<bool> {
        self.check_compatible(ambient)?;
        let mine = self.decomposition(0);
        let theirs = ambient.decomposition(0);
        Ok(mine
            .summands()
            .iter()
            .all(|s| theirs.multiplicity_of(&s.module) >= s.multiplicity))
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// `M(l)` over `base`: the permutation module `F_p[Γ_base / Γ_l]`.
pub fn motive_of_spec_over(
    ctx: &Arc<GaloisContext>,
    base: &str,
    l: &str,
    field: PrimeField,
) -> Result<ArtinMotive> {
    let hb = ctx.subgroup(base)?;
    let hl = ctx.subgroup(l)?;
    if !hl.is_subgroup_of(hb) {
        return Err(Error::NotSubgroup(format!(
            "Γ_{l} is not contained in Γ_{base}"
        )));
    }
    let inner = Subgroup::from_subgroup_group(hb.as_group(), Arc::clone(hl.as_group()))?;
    let x = GSet::coset_space(hb.as_group(), &inner)?;
    ArtinMotive::new(ctx, base, perm_module(&x, field), Some(format!("M({l})^{base}")))
}

/// `M(l)^F = F_p[Γ / Γ_l]`.
pub fn motive_of_spec(ctx: &Arc<GaloisContext>, l: &str, field: PrimeField) -> Result<ArtinMotive> {
    motive_of_spec_over(ctx, BASE, l, field)
}

/// The Artin part `m(M(X)) = M(L)^F` of a connected variety with field of constants `constants`.
pub fn m_of_variety(
    ctx: &Arc<GaloisContext>,
    constants: &str,
    field: PrimeField,
) -> Result<ArtinMotive> {
    motive_of_spec(ctx, constants, field)
}

/// `m` on Artin motives is the identity.
pub fn m_of_artin(a: &ArtinMotive) -> ArtinMotive {
    a.clone()
}

/// A finite étale algebra: a product of fields `F[Γ/H_i]`.
#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    ctx: Arc<GaloisContext>,
    factors: Vec<Subgroup>,
}

impl EtaleAlgebra {
    pub fn new(ctx: &Arc<GaloisContext>, factors: Vec<Subgroup>) -> Result<Self> {
        for h in &factors {
            if !h.parent().same_group(ctx.gamma()) {
                return Err(Error::NotSubgroup(format!("{h:?} is not a subgroup of Γ")));
            }
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            factors,
        })
    }

    /// Product of the fields named by `labels`.
    pub fn from_labels(ctx: &Arc<GaloisContext>, labels: &[&str]) -> Result<Self> {
        let factors = labels
            .iter()
            .map(|l| ctx.subgroup(l).cloned())
            .collect::<Result<_>>()?;
        Self::new(ctx, factors)
    }

    pub fn factors(&self) -> &[Subgroup] {
        &self.factors
    }

    /// Degree over `F`: `Σ [Γ : H_i]`.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Subgroup::index).sum()
    }

    /// The Γ-set of geometric points: disjoint union of coset spaces.
    pub fn gset(&self) -> GSet {
        let g = self.ctx.gamma();
        self.factors
            .iter()
            .map(|h| GSet::coset_space(g, h).expect("subgroup of Γ"))
            .reduce(|a, b| a.disjoint_union(&b).expect("same group"))
            .unwrap_or_else(|| {
                GSet::from_generator_action(g, 0, &vec![crate::groups::Perm::identity(0); g.generators().len()])
                    .expect("empty set")
            })
    }

    pub fn motive(&self, field: PrimeField) -> Result<ArtinMotive> {
        ArtinMotive::new(
            &self.ctx,
            BASE,
            perm_module(&self.gset(), field),
            Some("M(spec A)^F".into()),
        )
    }
}
