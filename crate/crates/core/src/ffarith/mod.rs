//! Exact arithmetic over `F_p`: dense matrices, polynomials, factorization.

mod factor;
mod field;
mod matrix;
mod minpoly;
mod poly;
mod span;

pub use factor::{factor, factor_with_seed, is_irreducible, square_free, DEFAULT_FACTOR_SEED};
pub use field::{is_prime, PrimeField, MAX_PRIME};
pub use matrix::{solve_commutant, FMatrix};
pub use minpoly::min_poly;
pub use poly::FPoly;
pub use span::Span;
