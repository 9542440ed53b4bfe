use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: PrimeField, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % field.p();
        }
        m
    }

    /// Builds a matrix from row-major data already reduced into `[0, p)`.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        debug_assert!(data.iter().all(|&x| x < field.p()));
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Ok(Self::from_data(field, r, c, data))
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        Self::from_data(field, rows, cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(field: PrimeField, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(field, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j))
            })
    }

    /// Panics on shape or field mismatch.
    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.field.p() as u64;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut acc = vec![0u64; m];
        let mut out = Vec::with_capacity(n * m);
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let row = self.row(i);
            for (t, &a) in row.iter().enumerate().take(k) {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let orow = other.row(t);
                for (dst, &b) in acc.iter_mut().zip(orow) {
                    *dst = (*dst + a * b as u64) % p;
                }
            }
            out.extend(acc.iter().map(|&x| x as u32));
        }
        FMatrix::from_data(self.field, n, m, out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch in matrix-vector product");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FMatrix) -> FMatrix {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FMatrix) -> FMatrix {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &FMatrix, op: impl Fn(PrimeField, u32, u32) -> u32) -> FMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(f, a, b))
            .collect();
        FMatrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u32) -> FMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FMatrix::from_data(f, self.rows, self.cols, data)
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &FMatrix, c: u32) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn transpose(&self) -> FMatrix {
        FMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Kronecker product; index `(i, k)` of the result block structure is `i * other.rows + k`.
    pub fn kron(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        FMatrix::from_fn(f, r, c, |i, j| {
            let (i1, i2) = (i / other.rows, i % other.rows);
            let (j1, j2) = (j / other.cols, j % other.cols);
            f.mul(self.get(i1, j1), other.get(i2, j2))
        })
    }

    pub fn pow(&self, mut e: u64) -> FMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = FMatrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in c..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (prow, tail) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor != 0 {
                    let nf = f.neg(factor);
                    for j in c..cols {
                        if prow[j] != 0 {
                            row[j] = f.add(row[j], f.mul(nf, prow[j]));
                        }
                    }
                }
            };
            head.chunks_mut(cols).for_each(eliminate);
            tail.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<FMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FMatrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                u32::from(j - n == i)
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(FMatrix::from_fn(self.field, n, n, |i, j| aug.get(i, n + j)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |s, i| self.field.add(s, self.get(i, i)))
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.field, self.to_rows())
    }
}

/// Basis of all `X` (of shape `rows x cols`) with `X * a = b * X` for every pair `(a, b)`.
///
/// Each `a` must be `cols x cols` and each `b` must be `rows x rows`.
pub fn solve_commutant(
    field: PrimeField,
    rows: usize,
    cols: usize,
    pairs: &[(&FMatrix, &FMatrix)],
) -> Result<Vec<FMatrix>> {
    for (k, (a, b)) in pairs.iter().enumerate() {
        if a.rows != cols || a.cols != cols || b.rows != rows || b.cols != rows {
            return Err(Error::DimensionMismatch(format!(
                "pair {k}: need {cols}x{cols} and {rows}x{rows}, got {}x{} and {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        if a.field != field || b.field != field {
            return Err(Error::PrimeMismatch(field.p(), a.field.p()));
        }
    }
    let vars = rows * cols;
    if vars == 0 {
        return Ok(Vec::new());
    }
    // Unknown X[i][k] lives at column i * cols + k.
    let mut system = Vec::with_capacity(pairs.len() * vars * vars);
    for (a, b) in pairs {
        for i in 0..rows {
            for j in 0..cols {
                let mut eq = vec![0u32; vars];
                for k in 0..cols {
                    let v = a.get(k, j);
                    if v != 0 {
                        let idx = i * cols + k;
                        eq[idx] = field.add(eq[idx], v);
                    }
                }
                for k in 0..rows {
                    let v = b.get(i, k);
                    if v != 0 {
                        let idx = k * cols + j;
                        eq[idx] = field.sub(eq[idx], v);
                    }
                }
                system.extend(eq);
            }
        }
    }
    let neqs = system.len() / vars;
    let sys = FMatrix::from_data(field, neqs, vars, system);
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|v| FMatrix::from_data(field, rows, cols, v))
        .collect())
}
