//! Factorization over `F_p`: square-free split, distinct-degree split, then
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::FPoly;
use crate::error::{Error, Result};

/// Seed used by [`factor`].
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed;

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
///
/// The product of the factors equals `f` up to its leading coefficient.
pub fn factor(f: &FPoly) -> Result<Vec<(FPoly, u32)>> {
    factor_with_seed(f, DEFAULT_FACTOR_SEED)
}

pub fn factor_with_seed(f: &FPoly, seed: u64) -> Result<Vec<(FPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(FPoly, u32)> = Vec::new();
    for (sqf, mult) in square_free(&f.monic()) {
        for (part, d) in distinct_degree(&sqf) {
            let mut irreducibles = Vec::new();
            equal_degree(&part, d, &mut rng, &mut irreducibles);
            out.extend(irreducibles.into_iter().map(|g| (g, mult)));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with `f = Π g^m`.
pub fn square_free(f: &FPoly) -> Vec<(FPoly, u32)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0.monic();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a p-th power: keep every p-th coefficient.
        let p = field.p() as usize;
        let root = FPoly::new(field, c.coeffs().iter().step_by(p).copied().collect());
        for (g, m) in square_free(&root.monic()) {
            out.push((g, m * field.p()));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &FPoly) -> Vec<(FPoly, usize)> {
    let field = f.field();
    let p = field.p() as u128;
    let x = FPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &FPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FPoly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field();
    let p = field.p();
    loop {
        let a = FPoly::new(field, (0..n).map(|_| rng.random_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g0 = a.gcd(f);
        if !g0.is_one() {
            if g0.degree() < f.degree() {
                split(f, &g0, d, rng, out);
                return;
            }
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1) / 2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1) / 2)
            let mut t = a.rem(f);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(p as u128, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.pow_mod(((p - 1) / 2) as u128, f)
                .sub(&FPoly::one(field))
        };
        let g = b.gcd(f);
        if !g.is_one() && g.degree() < f.degree() {
            split(f, &g, d, rng, out);
            return;
        }
    }
}

fn split(f: &FPoly, g: &FPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FPoly>) {
    let h = f.div_rem(g).0.monic();
    equal_degree(g, d, rng, out);
    equal_degree(&h, d, rng, out);
}

/// Irreducibility test via distinct-degree factorization.
pub fn is_irreducible(f: &FPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => {
            let m = f.monic();
            let sqf = square_free(&m);
            sqf.len() == 1 && sqf[0].1 == 1 && {
                let dd = distinct_degree(&m);
                dd.len() == 1 && Some(dd[0].1) == m.degree()
            }
        }
    }
}
