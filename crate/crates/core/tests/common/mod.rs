#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;
use std::sync::Arc;

use motivium_core::ffarith::Span;
use motivium_core::json::{self, GroupJson};
use motivium_core::{FMatrix, FiniteGroup, GModule, PrimeField};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every group document under `fixtures/groups`, sorted by name.
pub fn fixture_groups() -> Vec<(String, Arc<FiniteGroup>)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures().join("groups"))
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let g: GroupJson = json::read(&p).expect("group fixture");
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, g.build().expect("valid group"))
        })
        .collect()
}

pub fn random_invertible(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> FMatrix {
    loop {
        let m = FMatrix::from_fn(f, n, n, |_, _| rng.random_range(0..f.p()));
        if m.is_invertible() {
            return m;
        }
    }
}

fn canonical(f: PrimeField, d: usize, rows: &[Vec<u32>]) -> Vec<u32> {
    if rows.is_empty() {
        return Vec::new();
    }
    let data: Vec<u32> = rows.iter().flatten().copied().collect();
    let (r, pivots) = FMatrix::from_data(f, rows.len(), d, data).rref();
    r.data()[..pivots.len() * d].to_vec()
}

fn rows_of(flat: &[u32], d: usize) -> Vec<Vec<u32>> {
    flat.chunks(d).map(<[u32]>::to_vec).collect()
}

/// All submodules, as canonical row-reduced bases, by closing `U + <v>` from the zero subspace.
pub fn invariant_subspaces(m: &GModule) -> BTreeSet<Vec<u32>> {
    let (f, d) = (m.field(), m.dim());
    let gens: Vec<&FMatrix> = m.generator_actions();
    let vectors: Vec<Vec<u32>> = (0..(f.p() as usize).pow(d as u32))
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let c = (x % f.p() as usize) as u32;
                    x /= f.p() as usize;
                    c
                })
                .collect()
        })
        .collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([Vec::new()]);
    let mut queue = VecDeque::from([Vec::new()]);
    while let Some(u) = queue.pop_front() {
        let base = rows_of(&u, d);
        let mut span = Span::new(f, d);
        for r in &base {
            span.insert(r);
        }
        for v in &vectors {
            if span.contains(v) {
                continue;
            }
            let mut s = span.clone();
            let mut basis = base.clone();
            let mut todo = vec![v.clone()];
            s.insert(v);
            basis.push(v.clone());
            while let Some(x) = todo.pop() {
                for a in &gens {
                    let y = a.mul_vec(&x);
                    if s.insert(&y) {
                        basis.push(y.clone());
                        todo.push(y);
                    }
                }
            }
            let key = canonical(f, d, &basis);
            if seen.insert(key.clone()) {
                queue.push_back(key);
            }
        }
    }
    seen
}

/// Decomposable iff two nonzero submodules intersect trivially and span the module.
pub fn brute_force_decomposable(m: &GModule) -> bool {
    let d = m.dim();
    let subs: Vec<Vec<Vec<u32>>> = invariant_subspaces(m)
        .into_iter()
        .map(|s| rows_of(&s, d))
        .collect();
    for u in subs.iter().filter(|u| !u.is_empty() && 2 * u.len() <= d) {
        for w in subs.iter().filter(|w| w.len() == d - u.len()) {
            let rows: Vec<Vec<i64>> = u
                .iter()
                .chain(w.iter())
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect();
            if FMatrix::from_rows(m.field(), &rows).expect("rectangular").rank() == d {
                return true;
            }
        }
    }
    false
}
