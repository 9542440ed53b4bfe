use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::perm::Perm;
use crate::error::{Error, Result};

/// Hard cap on the order of groups built by closure.
pub const MAX_GROUP_ORDER: usize = 1000;

/// A finite permutation group with all elements enumerated.
///
/// Elements are stored in lexicographic order of their image lists, so the
/// identity is always element `0` and indices are a canonical element ordering.
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    names: Vec<String>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    gen_index: Vec<usize>,
    // element = generators[k] ∘ elements[prev]; None for the identity
    parent: Vec<Option<(usize, usize)>>,
    // breadth-first order: every element appears after its parent
    bfs: Vec<usize>,
}

impl FiniteGroup {
    /// Closes the generators under composition. Generator names default to `gen_<i>`.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Arc<Self>> {
        let names = (0..generators.len()).map(|i| format!("gen_{i}")).collect();
        Self::with_names(degree, generators, names)
    }

    pub fn with_names(
        degree: usize,
        generators: Vec<Perm>,
        names: Vec<String>,
    ) -> Result<Arc<Self>> {
        if names.len() != generators.len() {
            return Err(Error::InvalidPermutation(format!(
                "{} generator names for {} generators",
                names.len(),
                generators.len()
            )));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g:?} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut found: HashMap<Perm, (usize, Option<(usize, Perm)>)> = HashMap::new();
        let mut order = vec![id.clone()];
        found.insert(id.clone(), (0, None));
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let h = g.compose(&e);
                if found.contains_key(&h) {
                    continue;
                }
                if order.len() >= MAX_GROUP_ORDER {
                    return Err(Error::GroupTooLarge {
                        cap: MAX_GROUP_ORDER,
                    });
                }
                found.insert(h.clone(), (order.len(), Some((k, e.clone()))));
                order.push(h.clone());
                queue.push_back(h);
            }
        }
        let mut elements = order.clone();
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let parent = elements
            .iter()
            .map(|g| {
                found[g]
                    .1
                    .as_ref()
                    .map(|(k, prev)| (*k, index[prev]))
            })
            .collect();
        let bfs = order.iter().map(|g| index[g]).collect();
        let gen_index = generators.iter().map(|g| index[g]).collect();
        Ok(Arc::new(Self {
            degree,
            generators,
            names,
            elements,
            index,
            gen_index,
            parent,
            bfs,
        }))
    }

    pub fn trivial(degree: usize) -> Arc<Self> {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    /// Element index of generator `k`.
    pub fn generator_index(&self, k: usize) -> usize {
        self.gen_index[k]
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// For a non-identity element, `(k, prev)` with `element = generators[k] ∘ elements[prev]`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Element indices in breadth-first order from the identity.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    pub fn element_order(&self, i: usize) -> usize {
        let g = &self.elements[i];
        let mut x = g.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = g.compose(&x);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, i| lcm(acc, self.element_order(i)))
    }

    /// Same degree and same element set (generators may differ).
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}

impl Eq for FiniteGroup {}

/// Small groups used throughout tests, fixtures and benchmarks.
pub mod named {
    use super::*;

    fn perm(images: &[usize]) -> Perm {
        Perm::from_images(images).expect("valid permutation")
    }

    /// Cyclic group of order `n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let gens = if n > 1 {
            vec![perm(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>())]
        } else {
            Vec::new()
        };
        FiniteGroup::new(n.max(1), gens).expect("cyclic group")
    }

    /// Symmetric group on `n` points, generated by a transposition and an n-cycle.
    pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
        if n < 2 {
            return FiniteGroup::trivial(n.max(1));
        }
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::new(n, vec![perm(&t), perm(&c)]).expect("symmetric group")
    }

    /// Alternating group on `n >= 3` points, generated by 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize) -> Arc<FiniteGroup> {
        let gens = (2..n)
            .map(|k| {
                let mut im: Vec<usize> = (0..n).collect();
                im[0] = 1;
                im[1] = k;
                im[k] = 0;
                perm(&im)
            })
            .collect();
        FiniteGroup::new(n, gens).expect("alternating group")
    }

    /// Dihedral group of order `2n` acting on the vertices of an n-gon.
    pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
        let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::new(n, vec![perm(&r), perm(&s)]).expect("dihedral group")
    }

    /// Klein four-group acting regularly on 4 points.
    pub fn klein_four() -> Arc<FiniteGroup> {
        FiniteGroup::new(4, vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]).expect("V4")
    }

    /// Quaternion group acting regularly on 8 points.
    pub fn quaternion() -> Arc<FiniteGroup> {
        // points: 1, i, j, k, -1, -i, -j, -k as 0..8; left multiplication by i and j
        let i = [1, 4, 3, 6, 5, 0, 7, 2];
        let j = [2, 7, 4, 1, 6, 3, 0, 5];
        FiniteGroup::new(8, vec![perm(&i), perm(&j)]).expect("Q8")
    }
}
