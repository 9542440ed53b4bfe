use super::field::PrimeField;

/// Incrementally built span of vectors in `F_p^n`, with coordinates of
/// members relative to the independent vectors that were inserted.
#[derive(Clone, Debug)]
pub struct Span {
    field: PrimeField,
    len: usize,
    // (reduced row, pivot column, combination of inserted vectors giving the row)
    rows: Vec<(Vec<u32>, usize, Vec<u32>)>,
}

impl Span {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the stored rows. Returns the residue and the
    /// combination `c` (over inserted vectors) that was subtracted.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let f = self.field;
        let mut r = v.to_vec();
        let mut comb = vec![0u32; self.rows.len()];
        for (row, piv, rc) in &self.rows {
            let c = r[*piv];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in r.iter_mut().zip(row).skip(*piv) {
                if y != 0 {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
            for (x, &y) in comb.iter_mut().zip(rc) {
                if y != 0 {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        (r, comb)
    }

    /// Inserts `v`; returns `false` (and leaves the span unchanged) if `v` is already in it.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        self.try_insert(v).is_none()
    }

    /// Inserts `v` if independent. If `v` is dependent, returns its coordinates
    /// relative to the previously inserted vectors instead.
    pub fn try_insert(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, comb) = self.reduce(v);
        let Some(piv) = r.iter().position(|&x| x != 0) else {
            return Some(comb);
        };
        let f = self.field;
        let inv = f.inv(r[piv]).expect("nonzero");
        let row: Vec<u32> = r.iter().map(|&x| f.mul(x, inv)).collect();
        // row = inv * (v - Σ comb_i u_i)
        let k = self.rows.len();
        let mut rc: Vec<u32> = comb.iter().map(|&c| f.mul(f.neg(c), inv)).collect();
        rc.push(inv);
        for (_, _, old) in &mut self.rows {
            old.push(0);
        }
        debug_assert_eq!(rc.len(), k + 1);
        self.rows.push((row, piv, rc));
        None
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` relative to the inserted vectors, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (r, comb) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(comb)
    }

    /// Residue of `v` modulo the span (a canonical representative of its coset).
    pub fn residue(&self, v: &[u32]) -> Vec<u32> {
        self.reduce(v).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_recombine() {
        let f = PrimeField::new(5).unwrap();
        let mut s = Span::new(f, 3);
        let u = [1, 2, 3];
        let w = [0, 1, 4];
        assert!(s.insert(&u));
        assert!(s.insert(&w));
        let v: Vec<u32> = (0..3).map(|i| f.add(f.mul(2, u[i]), f.mul(3, w[i]))).collect();
        assert_eq!(s.coordinates(&v), Some(vec![2, 3]));
        assert!(!s.insert(&v));
        assert!(s.coordinates(&[0, 0, 1]).is_none());
        assert_eq!(s.dim(), 2);
    }
}
