//! Endomorphism algebras, their Jacobson radical and the structure of the
//! semisimple quotient.
//!
//! The radical of a matrix algebra `A ⊆ M_n(F_p)` is computed with the
//! trace-form filtration
//!
//! ```text
//! I_{-1} = A,   I_i = { x ∈ I_{i-1} : g_i(x y) = 0 for all y ∈ A },
//! g_i(x) = (Tr(x̃^(p^i)) mod p^(i+1)) / p^i,
//! ```
//!
//! where `x̃` is the integer lift of `x` with entries in `[0, p)`. Each `g_i`
//! is linear on `I_{i-1}`, and `I_l = rad(A)` for `l = ⌊log_p n⌋`.

use std::sync::OnceLock;

use super::hom::hom_space;
use super::module::GModule;
use crate::ffarith::{FMatrix, PrimeField, Span};

/// The endomorphism algebra of a module, with lazily computed radical.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    field: PrimeField,
    n: usize,
    basis: Vec<FMatrix>,
    radical: OnceLock<Vec<FMatrix>>,
    quotient: OnceLock<QuotientInfo>,
}

#[derive(Clone, Debug)]
struct QuotientInfo {
    commutative: bool,
    // dimension of {x : x^p = x} in the quotient (only meaningful when commutative)
    idempotent_rank: usize,
    splitter: Option<FMatrix>,
}

impl EndAlgebra {
    pub fn of(m: &GModule) -> Self {
        let basis = hom_space(m, m).expect("a module is compatible with itself");
        Self::from_basis(m.field(), m.dim(), basis)
    }

    /// Algebra spanned by `basis` (which must be closed under multiplication and contain 1).
    pub fn from_basis(field: PrimeField, n: usize, basis: Vec<FMatrix>) -> Self {
        Self {
            field,
            n,
            basis,
            radical: OnceLock::new(),
            quotient: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FMatrix] {
        &self.basis
    }

    pub fn radical_basis(&self) -> &[FMatrix] {
        self.radical
            .get_or_init(|| jacobson_radical(self.field, self.n, &self.basis))
    }

    /// Dimension of `End / rad(End)`.
    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_basis().len()
    }

    /// Whether the algebra is local, i.e. its semisimple quotient is a field.
    pub fn is_local(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        let q = self.quotient();
        q.commutative && q.idempotent_rank == 1
    }

    /// For a local algebra, the degree `k` of the residue field `F_{p^k}`.
    pub fn residue_degree(&self) -> Option<usize> {
        self.is_local().then(|| self.semisimple_dim())
    }

    /// An element whose minimal polynomial has at least two distinct irreducible
    /// factors, found deterministically when the semisimple quotient is
    /// commutative but not a field.
    pub fn splitting_element(&self) -> Option<&FMatrix> {
        self.quotient().splitter.as_ref()
    }

    fn quotient(&self) -> &QuotientInfo {
        self.quotient.get_or_init(|| self.analyze_quotient())
    }

    fn analyze_quotient(&self) -> QuotientInfo {
        let f = self.field;
        let rad = self.radical_basis();
        let len = self.n * self.n;
        let mut span = Span::new(f, len);
        for r in rad {
            span.insert(r.data());
        }
        let mut complement = Vec::new();
        for b in &self.basis {
            if span.insert(b.data()) {
                complement.push(b.clone());
            }
        }
        let r = rad.len();
        let k = complement.len();
        let in_radical = |m: &FMatrix| {
            span.coordinates(m.data())
                .expect("element of the algebra")
                .iter()
                .skip(r)
                .all(|&c| c == 0)
        };
        let commutative = complement.iter().enumerate().all(|(i, a)| {
            complement[i + 1..]
                .iter()
                .all(|b| in_radical(&a.mul(b).sub(&b.mul(a))))
        });
        if !commutative {
            return QuotientInfo {
                commutative,
                idempotent_rank: 0,
                splitter: None,
            };
        }
        // Berlekamp: kernel of x ↦ x^p - x on the commutative quotient.
        let p = f.p() as u64;
        let mut cols = Vec::with_capacity(k);
        for c in &complement {
            let img = c.pow(p).sub(c);
            let coords = span.coordinates(img.data()).expect("element of the algebra");
            cols.push(coords[r..].to_vec());
        }
        let frob = FMatrix::from_columns(f, k, &cols);
        let kernel = frob.nullspace();
        let splitter = (kernel.len() > 1).then(|| {
            let one = FMatrix::identity(f, self.n);
            let one_q = span.coordinates(one.data()).expect("1 lies in the algebra")[r..].to_vec();
            let v = kernel
                .iter()
                .find(|v| !proportional(f, v, &one_q))
                .expect("kernel of dimension > 1 has a non-scalar element");
            let mut s = FMatrix::zeros(f, self.n, self.n);
            for (c, b) in v.iter().zip(&complement) {
                s.add_scaled(b, *c);
            }
            s
        });
        QuotientInfo {
            commutative,
            idempotent_rank: kernel.len(),
            splitter,
        }
    }
}

fn proportional(f: PrimeField, v: &[u32], w: &[u32]) -> bool {
    let Some(i) = w.iter().position(|&x| x != 0) else {
        return v.iter().all(|&x| x == 0);
    };
    let c = f.mul(v[i], f.inv(w[i]).expect("nonzero"));
    v.iter().zip(w).all(|(&a, &b)| a == f.mul(c, b))
}

/// Basis of the Jacobson radical of the algebra spanned by `basis` (matrices of size `n`).
pub fn jacobson_radical(field: PrimeField, n: usize, basis: &[FMatrix]) -> Vec<FMatrix> {
    if n == 0 || basis.is_empty() {
        return Vec::new();
    }
    let p = field.p() as u128;
    let mut levels = 0u32;
    let mut pk = p;
    while pk <= n as u128 {
        levels += 1;
        pk *= p;
    }
    let mut ideal: Vec<FMatrix> = basis.to_vec();
    for i in 0..=levels {
        if ideal.is_empty() {
            break;
        }
        let g = FMatrix::from_fn(field, basis.len(), ideal.len(), |j, k| {
            trace_functional(field, &ideal[k].mul(&basis[j]), i)
        });
        let next: Vec<FMatrix> = g
            .nullspace()
            .into_iter()
            .map(|c| {
                let mut x = FMatrix::zeros(field, n, n);
                for (coef, b) in c.iter().zip(&ideal) {
                    x.add_scaled(b, *coef);
                }
                x
            })
            .collect();
        ideal = next;
    }
    ideal
}

/// `g_i(x) = (Tr(x̃^(p^i)) mod p^(i+1)) / p^i` for the lift `x̃` with entries in `[0, p)`.
fn trace_functional(field: PrimeField, x: &FMatrix, i: u32) -> u32 {
    if i == 0 {
        return x.trace();
    }
    let p = field.p() as u128;
    let modulus = p.pow(i + 1);
    let n = x.rows();
    let lift: Vec<u128> = x.data().iter().map(|&v| v as u128).collect();
    let mut acc = lift.clone();
    // x̃^(p^i) by i successive p-th powers, all mod p^(i+1)
    for _ in 0..i {
        let base = acc.clone();
        for _ in 1..p {
            acc = int_mul(&acc, &base, n, modulus);
        }
    }
    let tr = (0..n).fold(0u128, |s, d| (s + acc[d * n + d]) % modulus);
    let step = modulus / p;
    debug_assert_eq!(tr % step, 0, "trace functional must be divisible by p^i");
    ((tr / step) % p) as u32
}

fn int_mul(a: &[u128], b: &[u128], n: usize, modulus: u128) -> Vec<u128> {
    let mut out = vec![0u128; n * n];
    for i in 0..n {
        for t in 0..n {
            let x = a[i * n + t];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[t * n + j]) % modulus;
            }
        }
    }
    out
}
