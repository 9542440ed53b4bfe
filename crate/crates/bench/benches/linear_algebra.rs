use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motivium_core::ffarith::{factor_with_seed, min_poly};
use motivium_core::{FMatrix, FPoly, PrimeField};
use std::hint::black_box;

fn pseudo_random(field: PrimeField, n: usize, salt: u64) -> FMatrix {
    let mut state = salt.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    FMatrix::from_fn(field, n, n, |_, _| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % field.p() as u64) as u32
    })
}

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [16, 48, 96] {
        let m = pseudo_random(PrimeField::new(7).unwrap(), n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| m.rank()));
    }
    group.finish();
}

fn minimal_polynomial(c: &mut Criterion) {
    let m = pseudo_random(PrimeField::new(5).unwrap(), 40, 3);
    c.bench_function("min_poly_40_f5", |b| b.iter(|| min_poly(black_box(&m)).unwrap()));
}

fn factoring(c: &mut Criterion) {
    let field = PrimeField::new(3).unwrap();
    // x^81 - x splits into all monic linear factors
    let mut coeffs = vec![0u32; 82];
    coeffs[1] = field.neg(1);
    coeffs[81] = 1;
    let f = FPoly::new(field, coeffs);
    c.bench_function("factor_x81_minus_x_f3", |b| b.iter(|| factor_with_seed(black_box(&f), 0).unwrap().len()));
}

criterion_group!(benches, rref, minimal_polynomial, factoring);
criterion_main!(benches);
