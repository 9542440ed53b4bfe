//! Dynkin diagrams with a Galois ∗-action, tables of p-distinguished vertices
//! over a field lattice, and the comparison checks between two such tables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::artin::GaloisContext;
use crate::error::{Error, Result};
use crate::groups::{GSet, Perm, Subgroup};

/// A vertex subset, as sorted vertex indices.
pub type VertexSet = BTreeSet<usize>;

/// A Dynkin diagram: labelled vertices and bonds of multiplicity 1, 2 or 3.
#[derive(Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    labels: Vec<String>,
    edges: Vec<(usize, usize, u8)>,
    bonds: Vec<Vec<u8>>,
}

impl DynkinDiagram {
    pub fn new(labels: Vec<String>, edges: &[(String, String, u8)]) -> Result<Self> {
        let n = labels.len();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::InvalidDiagram(format!("duplicate vertex `{l}`")));
            }
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::InvalidDiagram(format!("edge endpoint `{l}` is not a vertex")))
        };
        let mut bonds = vec![vec![0u8; n]; n];
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, m) in edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(Error::InvalidDiagram(format!("loop at `{a}`")));
            }
            if !(1..=3).contains(m) {
                return Err(Error::InvalidDiagram(format!("bond multiplicity {m} on `{a}`-`{b}`")));
            }
            if bonds[i][j] != 0 {
                return Err(Error::InvalidDiagram(format!("repeated edge `{a}`-`{b}`")));
            }
            bonds[i][j] = *m;
            bonds[j][i] = *m;
            out.push((i.min(j), i.max(j), *m));
        }
        out.sort_unstable();
        Ok(Self {
            labels,
            edges: out,
            bonds,
        })
    }

    /// Path `1 - 2 - ... - n` with simple bonds.
    pub fn type_a(n: usize) -> Self {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<_> = (1..n)
            .map(|i| (i.to_string(), (i + 1).to_string(), 1))
            .collect();
        Self::new(labels, &edges).expect("path diagram")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidDiagram(format!("unknown vertex `{label}`")))
    }

    /// Vertex indices of a list of labels.
    pub fn subset(&self, labels: &[String]) -> Result<VertexSet> {
        labels.iter().map(|l| self.index(l)).collect()
    }

    pub fn subset_labels(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Edges as `(i, j, multiplicity)` with `i < j`, sorted.
    pub fn edges(&self) -> &[(usize, usize, u8)] {
        &self.edges
    }

    pub fn bond(&self, i: usize, j: usize) -> u8 {
        self.bonds[i][j]
    }

    /// Whether `images` (vertex `v ↦ images[v]`) preserves all bonds.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        let n = self.len();
        images.len() == n
            && images.iter().collect::<BTreeSet<_>>().len() == n
            && images.iter().all(|&v| v < n)
            && (0..n).all(|i| (0..n).all(|j| self.bonds[i][j] == self.bonds[images[i]][images[j]]))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for (w, &b) in self.bonds[v].iter().enumerate() {
                    if b != 0 && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Cartan-Killing type of each component (e.g. `"A3"`, `"B2"`), `None` if it is not a Dynkin diagram.
    ///
    /// Bonds carry no direction, so `C_n` is reported as `B_n`.
    pub fn component_types(&self) -> Vec<Option<String>> {
        self.components()
            .iter()
            .map(|c| self.classify(c))
            .collect()
    }

    /// Warnings for components that are not Dynkin diagrams.
    pub fn warnings(&self) -> Vec<String> {
        self.components()
            .iter()
            .zip(self.component_types())
            .filter(|(_, t)| t.is_none())
            .map(|(c, _)| {
                let names: Vec<&str> = c.iter().map(|&v| self.label(v)).collect();
                format!("component {{{}}} is not a Dynkin diagram", names.join(", "))
            })
            .collect()
    }

    fn classify(&self, comp: &[usize]) -> Option<String> {
        let n = comp.len();
        let edges: Vec<&(usize, usize, u8)> = self
            .edges
            .iter()
            .filter(|(i, _, _)| comp.binary_search(i).is_ok())
            .collect();
        if edges.len() + 1 != n {
            return None;
        }
        let degree = |v: usize| (0..self.len()).filter(|&w| self.bonds[v][w] != 0).count();
        let multi: Vec<_> = edges.iter().filter(|e| e.2 > 1).collect();
        let max_deg = comp.iter().map(|&v| degree(v)).max().unwrap_or(0);
        if multi.len() > 1 || (multi.len() == 1 && max_deg > 2) {
            return None;
        }
        if let Some(e) = multi.first() {
            return match (e.2, n) {
                (3, 2) => Some("G2".into()),
                (3, _) => None,
                (_, 2) => Some("B2".into()),
                _ => {
                    let end = |v: usize| degree(v) == 1;
                    if end(e.0) || end(e.1) {
                        Some(format!("B{n}"))
                    } else if n == 4 {
                        Some("F4".into())
                    } else {
                        None
                    }
                }
            };
        }
        if max_deg <= 2 {
            return Some(format!("A{n}"));
        }
        let branches: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) == 3).collect();
        if branches.len() != 1 || max_deg > 3 {
            return None;
        }
        let b = branches[0];
        let mut legs: Vec<usize> = (0..self.len())
            .filter(|&w| self.bonds[b][w] != 0)
            .map(|start| {
                let (mut prev, mut cur, mut len) = (b, start, 1);
                loop {
                    let next = (0..self.len()).find(|&w| self.bonds[cur][w] != 0 && w != prev);
                    match next {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                            len += 1;
                        }
                        None => break len,
                    }
                }
            })
            .collect();
        legs.sort_unstable();
        match legs.as_slice() {
            [1, 1, _] => Some(format!("D{n}")),
            [1, 2, 2] => Some("E6".into()),
            [1, 2, 3] => Some("E7".into()),
            [1, 2, 4] => Some("E8".into()),
            _ => None,
        }
    }
}

impl fmt::Debug for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(i, j, m)| (self.label(i), self.label(j), m))
            .collect();
        f.debug_struct("DynkinDiagram")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

/// The ∗-action of `Γ` on a diagram by automorphisms.
#[derive(Clone, Debug)]
pub struct StarAction {
    ctx: Arc<GaloisContext>,
    diagram: Arc<DynkinDiagram>,
    gset: GSet,
}

impl StarAction {
    /// One vertex permutation per generator of `Γ`, as images `v ↦ images[v]`.
    pub fn new(
        ctx: &Arc<GaloisContext>,
        diagram: &Arc<DynkinDiagram>,
        images: &[Vec<usize>],
    ) -> Result<Self> {
        let names = ctx.gamma().generator_names();
        if images.len() != names.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} generator images for {} generators",
                images.len(),
                names.len()
            )));
        }
        let mut perms = Vec::with_capacity(images.len());
        for (name, im) in names.iter().zip(images) {
            if !diagram.is_automorphism(im) {
                return Err(Error::InvalidDiagram(format!(
                    "image of `{name}` is not a diagram automorphism"
                )));
            }
            perms.push(Perm::from_images(im)?);
        }
        let gset = GSet::from_generator_action(ctx.gamma(), diagram.len(), &perms)?;
        Ok(Self {
            ctx: Arc::clone(ctx),
            diagram: Arc::clone(diagram),
            gset,
        })
    }

    /// The trivial (inner) action.
    pub fn trivial(ctx: &Arc<GaloisContext>, diagram: &Arc<DynkinDiagram>) -> Self {
        let id: Vec<usize> = (0..diagram.len()).collect();
        Self::new(ctx, diagram, &vec![id; ctx.gamma().generators().len()])
            .expect("identity action")
    }

    pub fn context(&self) -> &Arc<GaloisContext> {
        &self.ctx
    }

    pub fn diagram(&self) -> &Arc<DynkinDiagram> {
        &self.diagram
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    /// Image of vertex `v` under the element with index `g` of `Γ`.
    pub fn act(&self, g: usize, v: usize) -> usize {
        self.gset.act(g, v)
    }

    pub fn act_on_set(&self, g: usize, s: &VertexSet) -> VertexSet {
        s.iter().map(|&v| self.act(g, v)).collect()
    }

    /// Orbits of `Γ_K` on the vertices, ordered by least vertex.
    pub fn orbits(&self, k: &str) -> Result<Vec<Vec<usize>>> {
        Ok(self.gset.restrict(self.ctx.subgroup(k)?)?.orbits())
    }

    /// Whether `s` is stable under `Γ_K`.
    pub fn is_stable(&self, k: &str, s: &VertexSet) -> Result<bool> {
        let h = self.ctx.subgroup(k)?;
        Ok(h.members().iter().all(|&g| self.act_on_set(g, s) == *s))
    }
}

/// Subsets of vertices stable under some `Γ_K`, generated as unions of orbits.
pub struct InvariantSubsets {
    orbits: Vec<Vec<usize>>,
    next: u64,
    end: u64,
}

impl Iterator for InvariantSubsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(
            self.orbits
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, o)| o.iter().copied())
                .collect(),
        )
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.end - self.next).ok();
        (n.unwrap_or(usize::MAX), n)
    }
}

/// Diagram, ∗-action and the table `K ↦ D^p_K` of p-distinguished vertices.
#[derive(Clone, Debug)]
pub struct TitsGroupDatum {
    star: StarAction,
    table: IndexMap<String, VertexSet>,
    p_consistent: bool,
}

impl TitsGroupDatum {
    /// The table needs one entry per lattice label; each entry must be
    /// `Γ_K`-stable and the table monotone along the declared containments.
    pub fn new(star: StarAction, table: IndexMap<String, VertexSet>, p_consistent: bool) -> Result<Self> {
        let ctx = star.context();
        let n = star.diagram().len();
        for label in table.keys() {
            ctx.subgroup(label)?;
        }
        let mut ordered = IndexMap::new();
        for label in ctx.labels() {
            let d = table.get(label).ok_or_else(|| {
                Error::InvalidTitsData(format!("no p-distinguished set given for `{label}`"))
            })?;
            if let Some(v) = d.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidTitsData(format!("vertex index {v} out of range")));
            }
            if !star.is_stable(label, d)? {
                let names = star.diagram().subset_labels(d);
                return Err(Error::InvalidTitsData(format!(
                    "D^p over `{label}` = {{{}}} is not a union of Γ_{label}-orbits",
                    names.join(", ")
                )));
            }
            ordered.insert(label.to_string(), d.clone());
        }
        for (small, large) in ctx.containments() {
            if !ordered[small].is_subset(&ordered[large]) {
                return Err(Error::InvalidTitsData(format!(
                    "D^p over `{small}` is not contained in D^p over `{large}` although `{small}` ⊆ `{large}`"
                )));
            }
        }
        Ok(Self {
            star,
            table: ordered,
            p_consistent,
        })
    }

    pub fn star(&self) -> &StarAction {
        &self.star
    }

    pub fn diagram(&self) -> &Arc<DynkinDiagram> {
        self.star.diagram()
    }

    pub fn context(&self) -> &Arc<GaloisContext> {
        self.star.context()
    }

    pub fn p_consistent(&self) -> bool {
        self.p_consistent
    }

    /// Table rows in lattice order.
    pub fn table(&self) -> &IndexMap<String, VertexSet> {
        &self.table
    }

    pub fn distinguished(&self, k: &str) -> Result<&VertexSet> {
        self.table
            .get(k)
            .ok_or_else(|| Error::UnknownField(k.to_string()))
    }

    /// All `Γ_K`-stable vertex subsets.
    pub fn invariant_subsets(&self, k: &str) -> Result<InvariantSubsets> {
        let orbits = self.star.orbits(k)?;
        if orbits.len() >= 64 {
            return Err(Error::InvalidDiagram(format!(
                "{} orbits are too many to enumerate",
                orbits.len()
            )));
        }
        Ok(InvariantSubsets {
            end: 1u64 << orbits.len(),
            orbits,
            next: 0,
        })
    }

    /// `Stab_Γ(τ)`, the subgroup of the smallest field over which `τ` is stable.
    pub fn minimal_constant_field(&self, tau: &VertexSet) -> Result<Subgroup> {
        self.star.gset().stabilizer_of_subset(tau)
    }

    /// `(label of L_τ, τ)`, naming the standard motive of type `τ`.
    pub fn standard_motive_type(&self, tau: &VertexSet) -> Result<(String, VertexSet)> {
        let stab = self.minimal_constant_field(tau)?;
        match self.context().label_of(&stab) {
            Some(l) => Ok((l.to_string(), tau.clone())),
            None => Err(Error::SubgroupNotInLattice(format!("{:?}", stab.generators()))),
        }
    }
}

/// A diagram isomorphism `φ` between the diagrams of two data, equivariant for their ∗-actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramIso {
    map: Vec<usize>,
}

impl DiagramIso {
    pub fn new(left: &TitsGroupDatum, right: &TitsGroupDatum, map: Vec<usize>) -> Result<Self> {
        left.context().check_same(right.context())?;
        let (a, b) = (left.diagram(), right.diagram());
        let n = a.len();
        if b.len() != n
            || map.len() != n
            || map.iter().any(|&v| v >= n)
            || map.iter().collect::<BTreeSet<_>>().len() != n
        {
            return Err(Error::InvalidDiagram("vertex map is not a bijection".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if a.bond(i, j) != b.bond(map[i], map[j]) {
                    return Err(Error::InvalidDiagram(format!(
                        "bond `{}`-`{}` is not preserved",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        let gamma = left.context().gamma();
        for k in 0..gamma.generators().len() {
            let g = gamma.generator_index(k);
            if let Some(v) = (0..n).find(|&v| map[left.star().act(g, v)] != right.star().act(g, map[v])) {
                return Err(Error::NotEquivariant(format!(
                    "φ({} · {}) ≠ {} · φ({})",
                    gamma.generator_names()[k],
                    a.label(v),
                    gamma.generator_names()[k],
                    a.label(v)
                )));
            }
        }
        Ok(Self { map })
    }

    /// Matches vertices with equal labels.
    pub fn by_labels(left: &TitsGroupDatum, right: &TitsGroupDatum) -> Result<Self> {
        let map = left
            .diagram()
            .labels()
            .iter()
            .map(|l| right.diagram().index(l))
            .collect::<Result<_>>()?;
        Self::new(left, right, map)
    }

    pub fn identity(datum: &TitsGroupDatum) -> Self {
        Self {
            map: (0..datum.diagram().len()).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|&v| self.map[v]).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Self { map: inv }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `τ₀` is p-distinguished on exactly one side.
    Distinguished,
    /// `φ(D^p_K) ≠ D'^p_K`; the witness vertices are the symmetric difference.
    IndexMismatch,
}

/// Where a comparison fails: a field label and a vertex set in the right-hand diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub kind: WitnessKind,
    pub vertices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

fn mismatch(left: &TitsGroupDatum, right: &TitsGroupDatum, phi: &DiagramIso, k: &str) -> Option<Witness> {
    let image = phi.apply(&left.table[k]);
    let other = &right.table[k];
    (image != *other).then(|| Witness {
        label: k.to_string(),
        kind: WitnessKind::IndexMismatch,
        vertices: right
            .diagram()
            .subset_labels(&image.symmetric_difference(other).copied().collect()),
    })
}

fn check_pair(left: &TitsGroupDatum, right: &TitsGroupDatum, phi: &DiagramIso) -> Result<()> {
    left.context().check_same(right.context())?;
    DiagramIso::new(left, right, phi.map.clone()).map(|_| ())
}

/// For every lattice label `K`: `τ₀ ⊆ D^p_K` iff `φ(τ₀) ⊆ D'^p_K`, and when
/// both hold, `φ(D^p_K) = D'^p_K`. Labels are scanned in lattice order.
pub fn condition_i_check(
    left: &TitsGroupDatum,
    right: &TitsGroupDatum,
    phi: &DiagramIso,
    tau0: &VertexSet,
) -> Result<Verdict> {
    check_pair(left, right, phi)?;
    if !left.star().is_stable(crate::artin::BASE, tau0)? {
        return Err(Error::InvalidTitsData("τ₀ is not ∗-invariant".into()));
    }
    let image = phi.apply(tau0);
    for k in left.table.keys() {
        let a = tau0.is_subset(&left.table[k]);
        let b = image.is_subset(&right.table[k]);
        if a != b {
            return Ok(Verdict::Fail(Witness {
                label: k.clone(),
                kind: WitnessKind::Distinguished,
                vertices: right.diagram().subset_labels(&image),
            }));
        }
        if a {
            if let Some(w) = mismatch(left, right, phi, k) {
                return Ok(Verdict::Fail(w));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `φ(D^p_K) = D'^p_K` at every p-special label `K`.
pub fn motivic_equiv_check(
    left: &TitsGroupDatum,
    right: &TitsGroupDatum,
    phi: &DiagramIso,
) -> Result<Verdict> {
    check_pair(left, right, phi)?;
    let ctx = left.context();
    for k in left.table.keys() {
        if !ctx.is_p_special(k)? {
            continue;
        }
        if let Some(w) = mismatch(left, right, phi, k) {
            return Ok(Verdict::Fail(w));
        }
    }
    Ok(Verdict::Pass)
}
