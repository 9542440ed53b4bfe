//! JSON formats for groups, modules, Galois contexts, Tits data and formal motives.
//!
//! Documents are parsed with field-path diagnostics; every structural problem
//! surfaces as [`Error::Schema`]. Semantic checks are left to the constructors
//! of the algebra types, so their errors pass through unchanged.
//!
//! A group may be given inline, by name (`C3`, `S4`, `A4`, `D8` of order 8,
//! `V4`, `Q8`, `1`) or as a path to another group document. Paths are resolved
//! against the directory of the referring document.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::artin::{ArtinMotive, FieldEntry, GaloisContext, BASE};
use crate::error::{Error, Result};
use crate::ffarith::{FMatrix, PrimeField};
use crate::groups::named;
use crate::groups::{FiniteGroup, Perm, Subgroup};
use crate::modrep::GModule;
use crate::motexpr::{AUpperLabel, FormalMotive, FormalSummand, VarietyCatalog, VarietySpec};
use crate::titsdex::{DiagramIso, DynkinDiagram, StarAction, TitsGroupDatum, VertexSet};

/// Parses `text`, reporting the failing field path together with line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Schema(format!("at `{path}`: {inner}"))
    })?;
    de.end().map_err(|e| Error::Schema(e.to_string()))?;
    Ok(value)
}

/// Reads and parses a JSON document.
pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_names: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Inline(GroupJson),
    Name(String),
}

impl GroupJson {
    pub fn build(&self) -> Result<Arc<FiniteGroup>> {
        let gens = self
            .generators
            .iter()
            .map(|im| {
                if im.len() != self.degree {
                    return Err(Error::InvalidPermutation(format!(
                        "generator of length {} on {} points",
                        im.len(),
                        self.degree
                    )));
                }
                Perm::from_images(im)
            })
            .collect::<Result<Vec<_>>>()?;
        match &self.generator_names {
            Some(names) => FiniteGroup::with_names(self.degree, gens, names.clone()),
            None => FiniteGroup::new(self.degree, gens),
        }
    }

    pub fn of(g: &FiniteGroup) -> Self {
        Self {
            degree: g.degree(),
            generators: g.generators().iter().map(Perm::images).collect(),
            generator_names: Some(g.generator_names().to_vec()),
        }
    }
}

/// A group from its conventional name.
pub fn named_group(name: &str) -> Option<Arc<FiniteGroup>> {
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
    match name {
        "1" => Some(FiniteGroup::trivial(1)),
        "V4" => Some(named::klein_four()),
        "Q8" => Some(named::quaternion()),
        _ => {
            let (head, tail) = name.split_at(1);
            let n = num(tail)?;
            match head {
                "C" => Some(named::cyclic(n)),
                "S" if n <= 5 => Some(named::symmetric(n)),
                "A" if (3..=5).contains(&n) => Some(named::alternating(n)),
                "D" if n >= 4 && n % 2 == 0 => Some(named::dihedral(n / 2)),
                _ => None,
            }
        }
    }
}

impl GroupRef {
    pub fn resolve(&self, base_dir: &Path) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupRef::Inline(g) => g.build(),
            GroupRef::Name(n) => match named_group(n) {
                Some(g) => Ok(g),
                None => {
                    let path = base_dir.join(n);
                    let g: GroupJson = read(&path)?;
                    g.build()
                }
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupRef>,
    pub dim: usize,
    /// `gen_i` (or a generator name) to the rows of its matrix.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

/// Picks the prime from a document and an optional override; they must agree when both exist.
pub fn choose_prime(declared: Option<u32>, flag: Option<u32>) -> Result<PrimeField> {
    let p = match (declared, flag) {
        (Some(a), Some(b)) if a != b => return Err(Error::PrimeMismatch(a, b)),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Schema("no prime given (`p` field or --prime)".into())),
    };
    PrimeField::new(p)
}

impl ModuleJson {
    /// Builds the module; `group` is used when the document does not name one.
    pub fn build(
        &self,
        group: Option<&Arc<FiniteGroup>>,
        prime: Option<u32>,
        base_dir: &Path,
    ) -> Result<GModule> {
        let field = choose_prime(self.p, prime)?;
        let g = match (&self.group, group) {
            (Some(r), outer) => {
                let g = r.resolve(base_dir)?;
                if let Some(o) = outer {
                    if !g.same_group(o) {
                        return Err(Error::GroupMismatch);
                    }
                }
                g
            }
            (None, Some(o)) => Arc::clone(o),
            (None, None) => return Err(Error::Schema("module has no `group`".into())),
        };
        let names = g.generator_names();
        for key in self.action.keys() {
            if generator_slot(key, names).is_none() {
                return Err(Error::Schema(format!("action key `{key}` names no generator")));
            }
        }
        let mut mats = Vec::with_capacity(names.len());
        for k in 0..names.len() {
            let rows = self
                .action
                .iter()
                .find(|(key, _)| generator_slot(key, names) == Some(k))
                .map(|(_, r)| r);
            let m = match rows {
                Some(r) => {
                    if r.len() != self.dim || r.iter().any(|row| row.len() != self.dim) {
                        return Err(Error::Schema(format!(
                            "action of `gen_{k}` is not {d}x{d}",
                            d = self.dim
                        )));
                    }
                    if let Some(&x) = r.iter().flatten().find(|&&x| x < 0 || x >= field.p() as i64) {
                        return Err(Error::Schema(format!(
                            "entry {x} of `gen_{k}` is not in 0..{}",
                            field.p()
                        )));
                    }
                    FMatrix::from_rows(field, r)?
                }
                None if self.dim == 0 => FMatrix::zeros(field, 0, 0),
                None => return Err(Error::Schema(format!("missing action of `gen_{k}`"))),
            };
            mats.push(m);
        }
        GModule::new(&g, field, self.dim, mats)
    }

    pub fn of(m: &GModule) -> Self {
        Self {
            p: Some(m.prime()),
            group: Some(GroupRef::Inline(GroupJson::of(m.group()))),
            dim: m.dim(),
            action: m
                .generator_actions()
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    let rows = a
                        .to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(i64::from).collect())
                        .collect();
                    (format!("gen_{k}"), rows)
                })
                .collect(),
        }
    }
}

fn generator_slot(key: &str, names: &[String]) -> Option<usize> {
    if let Some(k) = names.iter().position(|n| n == key) {
        return Some(k);
    }
    key.strip_prefix("gen_")
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&k| k < names.len())
}

/// Subgroup generators as permutations or as indices into the group generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupGens {
    Perms(Vec<Vec<usize>>),
    Indices(Vec<usize>),
}

impl SubgroupGens {
    pub fn build(&self, g: &Arc<FiniteGroup>) -> Result<Subgroup> {
        match self {
            SubgroupGens::Perms(ps) => {
                let gens = ps
                    .iter()
                    .map(|im| Perm::from_images(im))
                    .collect::<Result<Vec<_>>>()?;
                Subgroup::generated(g, gens)
            }
            SubgroupGens::Indices(ix) => Subgroup::from_generator_indices(g, ix),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub subgroup_gens: SubgroupGens,
    #[serde(default)]
    pub p_special: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextJson {
    pub group: GroupRef,
    /// `F` and `E` may be left out; they default to `Γ` and `1`, not p-special.
    #[serde(default)]
    pub fields: IndexMap<String, FieldJson>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
}

impl ContextJson {
    pub fn build(&self, base_dir: &Path) -> Result<Arc<GaloisContext>> {
        let g = self.group.resolve(base_dir)?;
        let mut fields = IndexMap::new();
        fields.insert(BASE.to_string(), FieldEntry { subgroup: Subgroup::whole(&g), p_special: false });
        for (label, f) in &self.fields {
            let entry = FieldEntry {
                subgroup: f.subgroup_gens.build(&g)?,
                p_special: f.p_special,
            };
            fields.insert(label.clone(), entry);
        }
        if !fields.contains_key(crate::artin::TOP) {
            fields.insert(
                crate::artin::TOP.to_string(),
                FieldEntry { subgroup: Subgroup::trivial(&g), p_special: false },
            );
        }
        GaloisContext::new(g, fields, self.order.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ContextRef {
    Inline(Box<ContextJson>),
    Path(String),
}

impl ContextRef {
    pub fn build(&self, base_dir: &Path) -> Result<Arc<GaloisContext>> {
        match self {
            ContextRef::Inline(c) => c.build(base_dir),
            ContextRef::Path(p) => {
                let path = base_dir.join(p);
                let c: ContextJson = read(&path)?;
                c.build(path.parent().unwrap_or(base_dir))
            }
        }
    }
}

/// A vertex by position or by label.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

impl VertexRef {
    fn resolve(&self, d: &DynkinDiagram) -> Result<usize> {
        match self {
            VertexRef::Index(i) if *i < d.len() => Ok(*i),
            VertexRef::Index(i) => Err(Error::InvalidDiagram(format!("vertex {i} out of range"))),
            VertexRef::Label(l) => d.index(l),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(VertexRef, VertexRef, u8)>,
}

impl DiagramJson {
    pub fn build(&self) -> Result<DynkinDiagram> {
        let bare = DynkinDiagram::new(self.vertices.clone(), &[])?;
        let edges = self
            .edges
            .iter()
            .map(|(a, b, m)| {
                let a = bare.label(a.resolve(&bare)?).to_string();
                let b = bare.label(b.resolve(&bare)?).to_string();
                Ok((a, b, *m))
            })
            .collect::<Result<Vec<_>>>()?;
        DynkinDiagram::new(self.vertices.clone(), &edges)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TitsDatumJson {
    pub diagram: DiagramJson,
    /// Generator (`gen_i` or name) to vertex images; missing generators act trivially.
    #[serde(default)]
    pub star: BTreeMap<String, Vec<VertexRef>>,
    pub p_index: IndexMap<String, Vec<VertexRef>>,
    #[serde(default = "yes")]
    pub p_consistent: bool,
}

fn yes() -> bool {
    true
}

impl TitsDatumJson {
    pub fn build(&self, ctx: &Arc<GaloisContext>) -> Result<TitsGroupDatum> {
        let d = Arc::new(self.diagram.build()?);
        let names = ctx.gamma().generator_names();
        for key in self.star.keys() {
            if generator_slot(key, names).is_none() {
                return Err(Error::Schema(format!("star key `{key}` names no generator")));
            }
        }
        let images = (0..names.len())
            .map(|k| {
                match self.star.iter().find(|(key, _)| generator_slot(key, names) == Some(k)) {
                    Some((_, im)) => im.iter().map(|v| v.resolve(&d)).collect(),
                    None => Ok((0..d.len()).collect()),
                }
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let star = StarAction::new(ctx, &d, &images)?;
        let table = self
            .p_index
            .iter()
            .map(|(k, vs)| Ok((k.clone(), vertex_set(vs, &d)?)))
            .collect::<Result<IndexMap<_, _>>>()?;
        TitsGroupDatum::new(star, table, self.p_consistent)
    }
}

fn vertex_set(vs: &[VertexRef], d: &DynkinDiagram) -> Result<VertexSet> {
    vs.iter().map(|v| v.resolve(d)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TitsCheck {
    #[default]
    Motivic,
    ConditionI,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TitsBundleJson {
    pub context: ContextRef,
    pub left: TitsDatumJson,
    pub right: TitsDatumJson,
    /// Images of the left vertices; defaults to matching labels.
    #[serde(default)]
    pub phi: Option<Vec<VertexRef>>,
    #[serde(default)]
    pub check: TitsCheck,
    #[serde(default)]
    pub tau0: Vec<VertexRef>,
}

/// A loaded Tits comparison.
pub struct TitsBundle {
    pub left: TitsGroupDatum,
    pub right: TitsGroupDatum,
    pub phi: DiagramIso,
    pub check: TitsCheck,
    pub tau0: VertexSet,
}

impl TitsBundleJson {
    pub fn build(&self, base_dir: &Path) -> Result<TitsBundle> {
        let ctx = self.context.build(base_dir)?;
        let left = self.left.build(&ctx)?;
        let right = self.right.build(&ctx)?;
        let phi = match &self.phi {
            None => DiagramIso::by_labels(&left, &right)?,
            Some(map) => {
                let map = map
                    .iter()
                    .map(|v| v.resolve(right.diagram()))
                    .collect::<Result<Vec<_>>>()?;
                DiagramIso::new(&left, &right, map)?
            }
        };
        let tau0 = vertex_set(&self.tau0, left.diagram())?;
        Ok(TitsBundle { left, right, phi, check: self.check, tau0 })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyJson {
    pub label: String,
    #[serde(default)]
    pub dominates: Vec<String>,
    #[serde(default)]
    pub isotropy: BTreeMap<String, bool>,
}

/// The Artin part of a summand: a key of the bundle's `artin` table or an inline module.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArtinRef {
    Name(String),
    Inline(ModuleJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandJson {
    pub variety: String,
    /// Defaults to the unit (Tate) motive.
    #[serde(default)]
    pub artin: Option<ArtinRef>,
    #[serde(default)]
    pub shift: u32,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceBundleJson {
    pub context: ContextRef,
    #[serde(default)]
    pub p: Option<u32>,
    #[serde(default)]
    pub varieties: Vec<VarietyJson>,
    #[serde(default)]
    pub artin: IndexMap<String, ModuleJson>,
    pub left: Vec<SummandJson>,
    pub right: Vec<SummandJson>,
}

/// A loaded trace comparison.
pub struct TraceBundle {
    pub catalog: Arc<VarietyCatalog>,
    pub field: PrimeField,
    pub left: FormalMotive,
    pub right: FormalMotive,
}

impl TraceBundleJson {
    pub fn build(&self, prime: Option<u32>, base_dir: &Path) -> Result<TraceBundle> {
        let ctx = self.context.build(base_dir)?;
        let field = choose_prime(self.p, prime)?;
        let specs: Vec<VarietySpec> = self
            .varieties
            .iter()
            .map(|v| VarietySpec {
                label: v.label.clone(),
                dominates: v.dominates.clone(),
                isotropy: v.isotropy.clone(),
            })
            .collect();
        let catalog = VarietyCatalog::new(&ctx, &specs)?;
        let mut table = IndexMap::new();
        for (name, m) in &self.artin {
            let module = m.build(Some(ctx.gamma()), Some(field.p()), base_dir)?;
            table.insert(name.clone(), ArtinMotive::new(&ctx, BASE, module, Some(name.clone()))?);
        }
        let side = |list: &[SummandJson]| -> Result<FormalMotive> {
            let summands = list
                .iter()
                .map(|s| {
                    let artin = match &s.artin {
                        None => ArtinMotive::tate(&ctx, BASE, field)?,
                        Some(ArtinRef::Name(n)) => table
                            .get(n)
                            .cloned()
                            .ok_or_else(|| Error::Schema(format!("unknown Artin motive `{n}`")))?,
                        Some(ArtinRef::Inline(m)) => {
                            let module = m.build(Some(ctx.gamma()), Some(field.p()), base_dir)?;
                            ArtinMotive::new(&ctx, BASE, module, None)?
                        }
                    };
                    Ok(FormalSummand {
                        label: AUpperLabel::new(&catalog, &s.variety, artin)?,
                        shift: s.shift,
                        mult: s.mult,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            FormalMotive::new(&catalog, summands)
        };
        let left = side(&self.left)?;
        let right = side(&self.right)?;
        Ok(TraceBundle { catalog, field, left, right })
    }
}

/// Directory of `path`, for resolving references inside it.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}
