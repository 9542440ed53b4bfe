use std::collections::BTreeSet;
use std::sync::Arc;

use super::group::FiniteGroup;
use super::perm::Perm;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A finite set with a left action of a finite permutation group.
#[derive(Clone, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    // action[g][x] for every element index g
    action: Vec<Vec<u32>>,
    coset_reps: Option<Vec<usize>>,
}

impl GSet {
    /// Action given by one permutation of the points per group generator.
    ///
    /// Fails unless the assignment extends to a homomorphism into `Sym(size)`.
    pub fn from_generator_action(
        group: &Arc<FiniteGroup>,
        size: usize,
        images: &[Perm],
    ) -> Result<Self> {
        if images.len() != group.generators().len() {
            return Err(Error::InvalidPermutation(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        if let Some(bad) = images.iter().find(|p| p.degree() != size) {
            return Err(Error::InvalidPermutation(format!(
                "{bad:?} does not act on {size} points"
            )));
        }
        let mut action = vec![Vec::new(); group.order()];
        for &e in group.bfs_order() {
            action[e] = match group.parent(e) {
                None => (0..size as u32).collect(),
                Some((k, prev)) => action[prev]
                    .iter()
                    .map(|&x| images[k].apply(x as usize) as u32)
                    .collect(),
            };
        }
        for e in 0..group.order() {
            for (k, img) in images.iter().enumerate() {
                let ge = group.mul(group.generator_index(k), e);
                let lhs = &action[ge];
                if (0..size).any(|x| lhs[x] as usize != img.apply(action[e][x] as usize)) {
                    return Err(Error::NotARepresentation(format!(
                        "generator images do not define an action (fails at {:?} ∘ {:?})",
                        group.generators()[k],
                        group.element(e)
                    )));
                }
            }
        }
        Ok(Self {
            group: Arc::clone(group),
            size,
            action,
            coset_reps: None,
        })
    }

    /// Left cosets `gH` with the left-multiplication action.
    ///
    /// Cosets are ordered by their least element index, which is also the recorded representative.
    pub fn coset_space(group: &Arc<FiniteGroup>, h: &Subgroup) -> Result<Self> {
        if !h.parent().same_group(group) {
            return Err(Error::NotSubgroup(format!("{h:?} is not a subgroup of {group:?}")));
        }
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &x in h.members() {
                coset_of[group.mul(g, x)] = c;
            }
        }
        let action = (0..n)
            .map(|g| {
                reps.iter()
                    .map(|&r| coset_of[group.mul(g, r)] as u32)
                    .collect()
            })
            .collect();
        Ok(Self {
            group: Arc::clone(group),
            size: reps.len(),
            action,
            coset_reps: Some(reps),
        })
    }

    /// A single point with trivial action.
    pub fn point(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: Arc::clone(group),
            size: 1,
            action: vec![vec![0]; group.order()],
            coset_reps: None,
        }
    }

    /// The natural action of a permutation group on its points.
    pub fn natural(group: &Arc<FiniteGroup>) -> Self {
        Self {
            group: Arc::clone(group),
            size: group.degree(),
            action: group
                .elements()
                .iter()
                .map(|g| (0..group.degree()).map(|x| g.apply(x) as u32).collect())
                .collect(),
            coset_reps: None,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coset representatives (element indices), for sets built by [`GSet::coset_space`].
    pub fn coset_representatives(&self) -> Option<&[usize]> {
        self.coset_reps.as_deref()
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x] as usize
    }

    /// The permutation of points induced by element `g`.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        self.action[g].iter().map(|&x| x as usize).collect()
    }

    /// Diagonal action on `self × other`; the pair `(x, y)` is point `x * |other| + y`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let m = other.size;
        let action = (0..self.group.order())
            .map(|g| {
                let a = &self.action[g];
                let b = &other.action[g];
                let mut v = Vec::with_capacity(self.size * m);
                for &x in a {
                    for &y in b {
                        v.push(x * m as u32 + y);
                    }
                }
                v
            })
            .collect();
        Ok(GSet {
            group: Arc::clone(&self.group),
            size: self.size * m,
            action,
            coset_reps: None,
        })
    }

    /// Disjoint union; points of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let off = self.size as u32;
        let action = (0..self.group.order())
            .map(|g| {
                self.action[g]
                    .iter()
                    .copied()
                    .chain(other.action[g].iter().map(|&y| y + off))
                    .collect()
            })
            .collect();
        Ok(GSet {
            group: Arc::clone(&self.group),
            size: self.size + other.size,
            action,
            coset_reps: None,
        })
    }

    /// Orbit partition, each orbit sorted and orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            let mut orbit = BTreeSet::new();
            for g in 0..self.group.order() {
                let y = self.act(g, start);
                seen[y] = true;
                orbit.insert(y);
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbits().len() == 1
    }

    /// Setwise stabilizer `{g : g·S = S}`.
    pub fn stabilizer_of_subset(&self, subset: &BTreeSet<usize>) -> Result<Subgroup> {
        if let Some(&x) = subset.iter().find(|&&x| x >= self.size) {
            return Err(Error::InvalidPermutation(format!(
                "point {x} is outside a set of size {}",
                self.size
            )));
        }
        let members = (0..self.group.order())
            .filter(|&g| subset.iter().all(|&x| subset.contains(&self.act(g, x))))
            .collect();
        Ok(Subgroup::from_closed_members(&self.group, members))
    }

    pub fn point_stabilizer(&self, x: usize) -> Result<Subgroup> {
        self.stabilizer_of_subset(&BTreeSet::from([x]))
    }

    /// Restriction of the action to a subgroup.
    pub fn restrict(&self, h: &Subgroup) -> Result<GSet> {
        if !h.parent().same_group(&self.group) {
            return Err(Error::NotSubgroup(format!("{h:?} is not a subgroup of the acting group")));
        }
        let hg = h.as_group();
        let action = hg
            .elements()
            .iter()
            .map(|g| self.action[self.group.index_of(g).expect("member")].clone())
            .collect();
        Ok(GSet {
            group: Arc::clone(hg),
            size: self.size,
            action,
            coset_reps: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::group::named::*;
    use super::*;
    use crate::groups::double_cosets;

    fn transposition(s3: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::generated(s3, vec![Perm::from_images(&[1, 0, 2]).unwrap()]).unwrap()
    }

    #[test]
    fn coset_space_examples() {
        let c3 = cyclic(3);
        let regular = GSet::coset_space(&c3, &Subgroup::trivial(&c3)).unwrap();
        assert_eq!(regular.size(), 3);
        assert!(regular.is_transitive());

        let c2 = cyclic(2);
        let pt = GSet::coset_space(&c2, &Subgroup::whole(&c2)).unwrap();
        assert_eq!(pt.size(), 1);
        assert_eq!(pt.act(1, 0), 0);

        let s3 = symmetric(3);
        let x = GSet::coset_space(&s3, &transposition(&s3)).unwrap();
        assert_eq!(x.size(), 3);
        assert!(x.is_transitive());
        assert_eq!(x.coset_representatives().unwrap()[0], 0);
    }

    #[test]
    fn product_examples() {
        let c3 = cyclic(3);
        let regular = GSet::coset_space(&c3, &Subgroup::trivial(&c3)).unwrap();
        let sq = regular.product(&regular).unwrap();
        assert_eq!(sq.size(), 9);
        let orbits = sq.orbits();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().all(|o| o.len() == 3));

        let c2 = cyclic(2);
        let r2 = GSet::coset_space(&c2, &Subgroup::trivial(&c2)).unwrap();
        let sq2 = r2.product(&r2).unwrap();
        assert_eq!(sq2.orbits(), vec![vec![0, 3], vec![1, 2]]);

        let pt = GSet::point(&c3);
        let prod = pt.product(&regular).unwrap();
        assert_eq!(prod.permutation(1), regular.permutation(1));
        assert_eq!(regular.product(&r2).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn orbit_examples() {
        let c2 = cyclic(2);
        let trivial = GSet::from_generator_action(&c2, 4, &[Perm::identity(4)]).unwrap();
        assert_eq!(trivial.orbits().len(), 4);
        let swap = GSet::from_generator_action(&c2, 3, &[Perm::from_images(&[1, 0, 2]).unwrap()])
            .unwrap();
        assert_eq!(swap.orbits(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn action_must_respect_relations() {
        let c2 = cyclic(2);
        // a 3-cycle cannot be the image of an involution
        let bad = GSet::from_generator_action(&c2, 3, &[Perm::from_images(&[1, 2, 0]).unwrap()]);
        assert!(matches!(bad, Err(Error::NotARepresentation(_))));
    }

    #[test]
    fn stabilizer_examples() {
        // Z/2 swapping vertices 1 and 3 of A_3 (points 0 and 2)
        let c2 = cyclic(2);
        let flip = GSet::from_generator_action(&c2, 3, &[Perm::from_images(&[2, 1, 0]).unwrap()])
            .unwrap();
        assert_eq!(flip.stabilizer_of_subset(&BTreeSet::from([0, 1, 2])).unwrap().order(), 2);
        assert_eq!(flip.stabilizer_of_subset(&BTreeSet::from([0])).unwrap().order(), 1);
        assert_eq!(flip.stabilizer_of_subset(&BTreeSet::from([0, 2])).unwrap().order(), 2);
    }

    #[test]
    fn orbit_count_matches_double_cosets_and_sizes_divide() {
        for g in [symmetric(3), symmetric(4), dihedral(4), alternating(4)] {
            let subs = crate::groups::all_subgroups(&g);
            for h in &subs {
                let x = GSet::coset_space(&g, h).unwrap();
                assert_eq!(x.size() * h.order(), g.order());
                for k in &subs {
                    let y = GSet::coset_space(&g, k).unwrap();
                    let orbits = x.product(&y).unwrap().orbits();
                    assert_eq!(orbits.len(), double_cosets(&g, h, k).unwrap().len());
                    assert!(orbits.iter().all(|o| g.order() % o.len() == 0));
                }
            }
        }
    }
}
