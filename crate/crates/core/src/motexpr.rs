//! Formal motives: finite multisets of Tate-shifted A-upper motives `U_A(Y){n}`,
//! where `Y` is an opaque variety label with declared dominance and isotropy
//! and `A` is an indecomposable Artin motive over the base field.
//!
//! Artin-Tate traces are partial: over a field `K`, a summand `U_A(Y){n}` with
//! `Y` isotropic over `K` contributes the summands of `A_K` at shift `n`, and
//! nothing else is modelled.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use indexmap::IndexMap;

use crate::artin::{ArtinMotive, GaloisContext, BASE};
use crate::error::{Error, Result};
use crate::ffarith::PrimeField;
use crate::groups::{FiniteGroup, GSet, Perm};
use crate::modrep::{is_indecomposable, isomorphic_indecomposables, trivial_multiplicity, DEFAULT_SEED};

/// Variety label that stands for `Spec F`.
pub const POINT: &str = "point";

/// Scope note carried by every trace report.
pub const TRACE_SCOPE: &str = "partial (shift-0 layer per summand)";

/// Declared data for one variety label.
#[derive(Clone, Debug, Default)]
pub struct VarietySpec {
    pub label: String,
    pub dominates: Vec<String>,
    /// Isotropy over lattice labels; labels left out are inferred upward from smaller fields, else `false`.
    pub isotropy: BTreeMap<String, bool>,
}

/// Variety labels with a dominance preorder and isotropy over the lattice.
#[derive(Clone, Debug)]
pub struct VarietyCatalog {
    ctx: Arc<GaloisContext>,
    names: IndexMap<String, ()>,
    // dom[a][b]: a dominates b (reflexive, transitive)
    dom: Vec<Vec<bool>>,
    // iso[v][k] over the context labels in order
    iso: Vec<Vec<bool>>,
}

impl VarietyCatalog {
    /// Closes dominance transitively and validates it against isotropy.
    ///
    /// The label [`POINT`] is added automatically: it is isotropic everywhere
    /// and equivalent to every label isotropic over `F`.
    pub fn new(ctx: &Arc<GaloisContext>, specs: &[VarietySpec]) -> Result<Arc<Self>> {
        let fields: Vec<&str> = ctx.labels().collect();
        let nk = fields.len();
        let mut names = IndexMap::new();
        names.insert(POINT.to_string(), ());
        for s in specs {
            if s.label == POINT {
                return Err(Error::InvalidVariety(format!("`{POINT}` is reserved")));
            }
            if names.insert(s.label.clone(), ()).is_some() {
                return Err(Error::InvalidVariety(format!("duplicate variety `{}`", s.label)));
            }
        }
        let n = names.len();
        let mut iso = vec![vec![true; nk]];
        for s in specs {
            for k in s.isotropy.keys() {
                ctx.subgroup(k)?;
            }
            let row = (0..nk)
                .map(|j| match s.isotropy.get(fields[j]) {
                    Some(&b) => b,
                    None => s.isotropy.iter().any(|(k, &b)| {
                        b && ctx.declared_contains(k, fields[j]).expect("known labels")
                    }),
                })
                .collect();
            iso.push(row);
        }
        for (v, row) in iso.iter().enumerate() {
            for (small, large) in ctx.containments() {
                let i = fields.iter().position(|&f| f == small).expect("label");
                let j = fields.iter().position(|&f| f == large).expect("label");
                if row[i] && !row[j] {
                    return Err(Error::InvalidVariety(format!(
                        "`{}` is isotropic over `{small}` but not over `{large}`",
                        names.get_index(v).expect("index").0
                    )));
                }
            }
        }
        let f = fields.iter().position(|&k| k == BASE).expect("base label");
        let mut dom = vec![vec![false; n]; n];
        for (a, row) in dom.iter_mut().enumerate() {
            row[a] = true;
        }
        for (a, s) in specs.iter().enumerate() {
            for b in &s.dominates {
                let j = names
                    .get_index_of(b.as_str())
                    .ok_or_else(|| Error::InvalidVariety(format!("unknown variety `{b}`")))?;
                dom[a + 1][j] = true;
            }
        }
        for v in 1..n {
            if iso[v][f] {
                dom[0][v] = true;
                dom[v][0] = true;
            }
        }
        for k in 0..n {
            let via = dom[k].clone();
            for row in dom.iter_mut().filter(|row| row[k]) {
                for (x, &y) in row.iter_mut().zip(&via) {
                    *x |= y;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !dom[a][b] {
                    continue;
                }
                if let Some(j) = (0..nk).find(|&j| iso[a][j] && !iso[b][j]) {
                    return Err(Error::InvalidVariety(format!(
                        "`{}` dominates `{}` but only the former is isotropic over `{}`",
                        names.get_index(a).expect("index").0,
                        names.get_index(b).expect("index").0,
                        fields[j]
                    )));
                }
            }
        }
        Ok(Arc::new(Self {
            ctx: Arc::clone(ctx),
            names,
            dom,
            iso,
        }))
    }

    pub fn context(&self) -> &Arc<GaloisContext> {
        &self.ctx
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.names.keys().map(String::as_str)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.names.contains_key(label)
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.names
            .get_index_of(label)
            .ok_or_else(|| Error::InvalidVariety(format!("unknown variety `{label}`")))
    }

    pub fn dominates(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.dom[self.index(a)?][self.index(b)?])
    }

    /// Mutual dominance.
    pub fn equivalent(&self, a: &str, b: &str) -> Result<bool> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(self.dom[i][j] && self.dom[j][i])
    }

    /// The first declared label equivalent to `label`.
    pub fn class_representative(&self, label: &str) -> Result<&str> {
        let i = self.index(label)?;
        let j = (0..self.names.len())
            .find(|&j| self.dom[i][j] && self.dom[j][i])
            .expect("reflexive");
        Ok(self.names.get_index(j).expect("index").0)
    }

    pub fn isotropic(&self, variety: &str, k: &str) -> Result<bool> {
        let v = self.index(variety)?;
        let j = self
            .ctx
            .labels()
            .position(|l| l == k)
            .ok_or_else(|| Error::UnknownField(k.to_string()))?;
        Ok(self.iso[v][j])
    }

    fn check_same(&self, other: &VarietyCatalog) -> Result<()> {
        if std::ptr::eq(self, other)
            || (self.ctx.same_as(&other.ctx)
                && self.names == other.names
                && self.dom == other.dom
                && self.iso == other.iso)
        {
            Ok(())
        } else {
            Err(Error::ContextMismatch("the variety catalogs differ".into()))
        }
    }
}

/// `U_A(Y)`: a variety label and an indecomposable Artin motive over `F`.
#[derive(Clone, Debug)]
pub struct AUpperLabel {
    variety: String,
    artin: ArtinMotive,
}

impl AUpperLabel {
    pub fn new(catalog: &VarietyCatalog, variety: &str, artin: ArtinMotive) -> Result<Self> {
        catalog.index(variety)?;
        catalog.context().check_same(artin.context())?;
        if artin.base() != BASE {
            return Err(Error::ContextMismatch(format!(
                "Artin part lives over `{}`, expected `{BASE}`",
                artin.base()
            )));
        }
        if artin.dim() == 0 || !is_indecomposable(artin.module())? {
            return Err(Error::NotIndecomposable(format!(
                "Artin part of U_A({variety}) has a nontrivial decomposition"
            )));
        }
        Ok(Self {
            variety: variety.to_string(),
            artin,
        })
    }

    /// The upper motive `U(Y)`, i.e. `U_F(Y)`.
    pub fn upper(catalog: &VarietyCatalog, variety: &str, field: PrimeField) -> Result<Self> {
        let t = ArtinMotive::tate(catalog.context(), BASE, field)?;
        Self::new(catalog, variety, t)
    }

    pub fn variety(&self) -> &str {
        &self.variety
    }

    pub fn artin(&self) -> &ArtinMotive {
        &self.artin
    }
}

/// One summand `U_A(Y){shift}` with a multiplicity.
#[derive(Clone, Debug)]
pub struct FormalSummand {
    pub label: AUpperLabel,
    pub shift: u32,
    pub mult: usize,
}

/// A finite sum of shifted A-upper motives.
#[derive(Clone, Debug)]
pub struct FormalMotive {
    catalog: Arc<VarietyCatalog>,
    summands: Vec<FormalSummand>,
}

impl FormalMotive {
    pub fn new(catalog: &Arc<VarietyCatalog>, summands: Vec<FormalSummand>) -> Result<Self> {
        for s in &summands {
            catalog.index(&s.label.variety)?;
            catalog.context().check_same(s.label.artin.context())?;
        }
        Ok(Self {
            catalog: Arc::clone(catalog),
            summands: summands.into_iter().filter(|s| s.mult > 0).collect(),
        })
    }

    pub fn zero(catalog: &Arc<VarietyCatalog>) -> Self {
        Self {
            catalog: Arc::clone(catalog),
            summands: Vec::new(),
        }
    }

    pub fn catalog(&self) -> &Arc<VarietyCatalog> {
        &self.catalog
    }

    pub fn summands(&self) -> &[FormalSummand] {
        &self.summands
    }

    /// `Σ mult · dim A`.
    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.mult * s.label.artin.dim()).sum()
    }

    /// Summand count with multiplicity.
    pub fn count(&self) -> usize {
        self.summands.iter().map(|s| s.mult).sum()
    }

    /// Merges isomorphic summands at equal shifts, keeping the first representative.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<FormalSummand> = Vec::new();
        for s in &self.summands {
            match out.iter_mut().find(|t| {
                t.shift == s.shift && labels_iso_unchecked(&self.catalog, &t.label, &s.label)
            }) {
                Some(t) => t.mult += s.mult,
                None => out.push(s.clone()),
            }
        }
        Self {
            catalog: Arc::clone(&self.catalog),
            summands: out,
        }
    }
}

fn labels_iso_unchecked(cat: &VarietyCatalog, u: &AUpperLabel, v: &AUpperLabel) -> bool {
    cat.equivalent(&u.variety, &v.variety).expect("catalog labels")
        && isomorphic_indecomposables(u.artin.module(), v.artin.module())
}

/// `U_A(Y) ≅ U_{A'}(Y')` iff `A ≅ A'` and `Y`, `Y'` are equivalent.
pub fn labels_isomorphic(catalog: &VarietyCatalog, u: &AUpperLabel, v: &AUpperLabel) -> Result<bool> {
    catalog.index(&u.variety)?;
    catalog.index(&v.variety)?;
    u.artin.context().check_same(v.artin.context())?;
    catalog.context().check_same(u.artin.context())?;
    Ok(labels_iso_unchecked(catalog, u, v))
}

/// Whether a shift-preserving matching of summands into isomorphic pairs exists.
pub fn motive_isomorphic(m: &FormalMotive, n: &FormalMotive) -> Result<bool> {
    m.catalog.check_same(&n.catalog)?;
    let a = m.normalized();
    let b = n.normalized();
    if a.summands.len() != b.summands.len() {
        return Ok(false);
    }
    Ok(a.summands.iter().all(|s| {
        b.summands.iter().any(|t| {
            t.shift == s.shift
                && t.mult == s.mult
                && labels_iso_unchecked(&m.catalog, &s.label, &t.label)
        })
    }))
}

/// One class of the Artin-Tate trace over a field.
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub artin: ArtinMotive,
    pub shift: u32,
    pub mult: usize,
}

/// Artin-Tate trace over `k`: the summands of `A_K` at shift `n`, for every
/// `U_A(Y){n}` with `Y` isotropic over `K`, grouped into isomorphism classes.
///
/// Ordered by shift, dimension and action matrices.
pub fn artin_tate_trace(m: &FormalMotive, k: &str) -> Result<Vec<TraceEntry>> {
    m.catalog.context().subgroup(k)?;
    let mut out: Vec<TraceEntry> = Vec::new();
    for s in &m.summands {
        if !m.catalog.isotropic(&s.label.variety, k)? {
            continue;
        }
        let over_k = s.label.artin.base_change(k)?;
        for (a, mult) in over_k.decompose(DEFAULT_SEED) {
            match out.iter_mut().find(|t| {
                t.shift == s.shift
                    && t.artin.dim() == a.dim()
                    && isomorphic_indecomposables(t.artin.module(), a.module())
            }) {
                Some(t) => t.mult += mult * s.mult,
                None => out.push(TraceEntry {
                    artin: a,
                    shift: s.shift,
                    mult: mult * s.mult,
                }),
            }
        }
    }
    out.sort_by_cached_key(|t| (t.shift, t.artin.dim(), t.artin.module().action_key()));
    Ok(out)
}

/// Number of Tate summands in the trace over `k`, per shift.
pub fn tate_trace(m: &FormalMotive, k: &str) -> Result<BTreeMap<u32, usize>> {
    let mut out = BTreeMap::new();
    for t in artin_tate_trace(m, k)? {
        *out.entry(t.shift).or_insert(0) += t.mult * trivial_multiplicity(t.artin.module());
    }
    out.retain(|_, v| *v > 0);
    Ok(out)
}

/// First disagreement between two traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceWitness {
    pub label: String,
    pub shift: u32,
    /// Dimension of the Artin class whose multiplicities differ.
    pub dim: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceVerdict {
    Pass,
    Fail(TraceWitness),
}

impl TraceVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, TraceVerdict::Pass)
    }

    pub fn witness(&self) -> Option<&TraceWitness> {
        match self {
            TraceVerdict::Pass => None,
            TraceVerdict::Fail(w) => Some(w),
        }
    }
}

/// Compares Artin-Tate traces over every lattice label, in lattice order.
pub fn higher_trace_compare(m: &FormalMotive, n: &FormalMotive) -> Result<TraceVerdict> {
    m.catalog.check_same(&n.catalog)?;
    for k in m.catalog.context().labels() {
        let a = artin_tate_trace(m, k)?;
        let b = artin_tate_trace(n, k)?;
        if let Some(w) = first_difference(k, &a, &b) {
            return Ok(TraceVerdict::Fail(w));
        }
    }
    Ok(TraceVerdict::Pass)
}

fn first_difference(k: &str, a: &[TraceEntry], b: &[TraceEntry]) -> Option<TraceWitness> {
    let count = |list: &[TraceEntry], t: &TraceEntry| {
        list.iter()
            .find(|u| {
                u.shift == t.shift
                    && u.artin.dim() == t.artin.dim()
                    && isomorphic_indecomposables(u.artin.module(), t.artin.module())
            })
            .map_or(0, |u| u.mult)
    };
    let mut diffs: Vec<(u32, usize, Vec<u32>, usize, usize)> = Vec::new();
    for t in a {
        let r = count(b, t);
        if r != t.mult {
            diffs.push((t.shift, t.artin.dim(), t.artin.module().action_key(), t.mult, r));
        }
    }
    for t in b {
        if count(a, t) == 0 {
            diffs.push((t.shift, t.artin.dim(), t.artin.module().action_key(), 0, t.mult));
        }
    }
    diffs.into_iter().min().map(|(shift, dim, _, left, right)| TraceWitness {
        label: k.to_string(),
        shift,
        dim,
        left,
        right,
    })
}

/// Rewrites each `U_A(Y){n}` as `⊕_j U_{A'_j}(Y){n}` over the summands `A'_j` of `A ⊗ B`.
pub fn tensor_artin(m: &FormalMotive, b: &ArtinMotive) -> Result<FormalMotive> {
    m.catalog.context().check_same(b.context())?;
    if b.base() != BASE {
        return Err(Error::ContextMismatch(format!(
            "tensor factor lives over `{}`, expected `{BASE}`",
            b.base()
        )));
    }
    let mut out = Vec::new();
    for s in &m.summands {
        let prod = s.label.artin.tensor(b)?;
        for (a, mult) in prod.decompose(DEFAULT_SEED) {
            out.push(FormalSummand {
                label: AUpperLabel {
                    variety: s.label.variety.clone(),
                    artin: a,
                },
                shift: s.shift,
                mult: mult * s.mult,
            });
        }
    }
    Ok(FormalMotive {
        catalog: Arc::clone(&m.catalog),
        summands: out,
    }
    .normalized())
}

/// `(U(Y)^F)_L ≅ ⊕_σ U(Y_σ)`: the conjugates `Y_σ` over `σ ∈ Gal(L/F)`, with multiplicities.
///
/// `conjugation[k]` maps variety labels to their images under generator `k`
/// of `galois`; labels left out are fixed.
pub fn expand_corestriction(
    galois: &Arc<FiniteGroup>,
    y: &str,
    conjugation: &[BTreeMap<String, String>],
) -> Result<Vec<(String, usize)>> {
    if conjugation.len() != galois.generators().len() {
        return Err(Error::InvalidVariety(format!(
            "conjugation data for {} of {} generators",
            conjugation.len(),
            galois.generators().len()
        )));
    }
    let mut points: BTreeSet<&str> = BTreeSet::from([y]);
    for m in conjugation {
        for (a, b) in m {
            points.insert(a);
            points.insert(b);
        }
    }
    let points: Vec<&str> = points.into_iter().collect();
    let idx = |l: &str| points.iter().position(|&p| p == l).expect("collected");
    let perms = conjugation
        .iter()
        .map(|m| {
            let images: Vec<usize> = points
                .iter()
                .map(|&p| m.get(p).map_or(idx(p), |q| idx(q)))
                .collect();
            Perm::from_images(&images)
                .map_err(|_| Error::InvalidVariety("conjugation is not a permutation of labels".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let x = GSet::from_generator_action(galois, points.len(), &perms)?;
    let start = idx(y);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for g in 0..galois.order() {
        *counts.entry(x.act(g, start)).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(i, c)| (points[i].to_string(), c))
        .collect())
}
