use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::group::FiniteGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A subgroup of a parent group, carried both as a member set of the parent
/// and as a permutation group in its own right.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    /// Subgroup generated by the given permutations, which must lie in `parent`.
    pub fn generated(parent: &Arc<FiniteGroup>, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if !parent.contains(g) {
                return Err(Error::NotSubgroup(format!("{g:?} is not an element of the parent group")));
            }
        }
        let group = FiniteGroup::new(parent.degree(), generators)?;
        Ok(Self::from_group(parent, group))
    }

    /// Subgroup generated by a selection of the parent's generators.
    pub fn from_generator_indices(parent: &Arc<FiniteGroup>, indices: &[usize]) -> Result<Self> {
        let mut gens = Vec::with_capacity(indices.len());
        let mut names = Vec::with_capacity(indices.len());
        for &k in indices {
            let g = parent.generators().get(k).ok_or_else(|| {
                Error::NotSubgroup(format!("generator index {k} out of range"))
            })?;
            gens.push(g.clone());
            names.push(parent.generator_names()[k].clone());
        }
        let group = FiniteGroup::with_names(parent.degree(), gens, names)?;
        Ok(Self::from_group(parent, group))
    }

    /// Views `group` as a subgroup of `parent`; fails unless every element lies in `parent`.
    pub fn from_subgroup_group(parent: &Arc<FiniteGroup>, group: Arc<FiniteGroup>) -> Result<Self> {
        if !group.is_subgroup_of(parent) {
            return Err(Error::NotSubgroup(format!("{group:?} is not contained in {parent:?}")));
        }
        Ok(Self::from_group(parent, group))
    }

    fn from_group(parent: &Arc<FiniteGroup>, group: Arc<FiniteGroup>) -> Self {
        let mut members: Vec<usize> = group
            .elements()
            .iter()
            .map(|g| parent.index_of(g).expect("checked membership"))
            .collect();
        members.sort_unstable();
        Self {
            parent: Arc::clone(parent),
            group,
            members,
        }
    }

    /// Subgroup from a set of parent element indices closed under multiplication.
    pub(crate) fn from_closed_members(parent: &Arc<FiniteGroup>, members: Vec<usize>) -> Self {
        let gens = minimal_generators(parent, &members);
        let group = FiniteGroup::new(parent.degree(), gens).expect("subgroup of a valid group");
        Self::from_group(parent, group)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_group(parent, FiniteGroup::trivial(parent.degree()))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self {
            parent: Arc::clone(parent),
            group: Arc::clone(parent),
            members: (0..parent.order()).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// The subgroup as a permutation group.
    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Perm] {
        self.group.generators()
    }

    /// Sorted parent element indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `[parent : self]`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.group.contains(g)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&i| other.contains_index(i))
    }

    /// `g H g^-1` for the parent element with index `g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let gp = self.parent.element(g);
        let gi = gp.inverse();
        let gens = self
            .generators()
            .iter()
            .map(|h| gp.compose(h).compose(&gi))
            .collect();
        Subgroup::generated(&self.parent, gens).expect("conjugates stay in the parent")
    }

    pub fn is_normal(&self) -> bool {
        self.parent
            .generators()
            .iter()
            .all(|g| {
                let gi = g.inverse();
                self.generators().iter().all(|h| self.contains(&g.compose(h).compose(&gi)))
            })
    }

    /// Largest normal subgroup of the parent contained in `self`.
    pub fn core(&self) -> Subgroup {
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&h| {
                (0..self.parent.order()).all(|g| {
                    let c = self.parent.mul(self.parent.mul(g, h), self.parent.inverse(g));
                    self.contains_index(c)
                })
            })
            .collect();
        Subgroup::from_closed_members(&self.parent, members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&i| other.contains_index(i))
            .collect();
        Subgroup::from_closed_members(&self.parent, members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_group(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("index", &self.index())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Greedy generating set: each element not yet in the generated subgroup is added.
fn minimal_generators(parent: &FiniteGroup, members: &[usize]) -> Vec<Perm> {
    let mut closure: BTreeSet<usize> = BTreeSet::from([0]);
    let mut gens = Vec::new();
    for &m in members {
        if closure.contains(&m) {
            continue;
        }
        gens.push(m);
        closure = close(parent, &gens);
    }
    gens.into_iter().map(|i| parent.element(i).clone()).collect()
}

fn close(parent: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(e) = queue.pop_front() {
        for &g in gens {
            let h = parent.mul(g, e);
            if set.insert(h) {
                queue.push_back(h);
            }
        }
    }
    set
}

/// Every subgroup of `g`, sorted by order and then member list.
///
/// Built from cyclic subgroups by repeated joins; intended for small groups.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for i in 0..g.order() {
        let c: Vec<usize> = close(g, &[i]).into_iter().collect();
        if found.insert(c.clone()) {
            frontier.push(c);
        }
    }
    let cyclic: Vec<Vec<usize>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| a.binary_search(x).is_ok()) {
                    continue;
                }
                let gens: Vec<usize> = a.iter().chain(c).copied().collect();
                let join: Vec<usize> = close(g, &gens).into_iter().collect();
                if found.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out.into_iter()
        .map(|m| Subgroup::from_closed_members(g, m))
        .collect()
}

/// One representative (the least element index) per double coset `H g K`.
pub fn double_cosets(g: &Arc<FiniteGroup>, h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>> {
    if !h.parent().same_group(g) || !k.parent().same_group(g) {
        return Err(Error::NotSubgroup("double cosets need subgroups of the same group".into()));
    }
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &a in h.members() {
            let ax = g.mul(a, x);
            for &b in k.members() {
                seen[g.mul(ax, b)] = true;
            }
        }
    }
    Ok(reps)
}
