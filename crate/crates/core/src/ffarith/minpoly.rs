use super::matrix::FMatrix;
use super::poly::FPoly;
use super::span::Span;
use crate::error::{Error, Result};

/// Monic minimal polynomial of a square matrix.
///
/// Computed as the lcm of the local minimal polynomials of the standard basis
/// vectors, each read off from the first linear dependency in its Krylov sequence.
pub fn min_poly(m: &FMatrix) -> Result<FPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let field = m.field();
    let n = m.rows();
    let mut acc = FPoly::one(field);
    // Vectors already covered by the cyclic subspaces seen so far need no work.
    let mut covered = Span::new(field, n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        if covered.contains(&e) {
            continue;
        }
        let local = local_min_poly(m, &e, &mut covered);
        acc = acc.lcm(&local);
        if acc.degree() == Some(n) {
            break;
        }
    }
    Ok(acc)
}

/// Minimal polynomial of `m` relative to the vector `v`; inserts the Krylov
/// vectors into `covered`.
fn local_min_poly(m: &FMatrix, v: &[u32], covered: &mut Span) -> FPoly {
    let field = m.field();
    let mut krylov = Span::new(field, v.len());
    let mut w = v.to_vec();
    loop {
        covered.insert(&w);
        match krylov.try_insert(&w) {
            None => w = m.mul_vec(&w),
            Some(coords) => {
                // m^k v = Σ coords_i m^i v
                let mut c: Vec<u32> = coords.iter().map(|&a| field.neg(a)).collect();
                c.push(1);
                return FPoly::new(field, c);
            }
        }
    }
}
