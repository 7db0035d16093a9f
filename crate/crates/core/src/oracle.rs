//! Seeded random integer matrices for identity testing by evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plucker::{Evaluator, Matrix, PluckerPoly};
use crate::Result;

pub const ENTRY_BOUND: i64 = 9;

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, width: usize) -> Matrix {
    (0..n)
        .map(|_| (0..width).map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)).collect())
        .collect()
}

/// `count` matrices of size `n x width` with entries in `[-9, 9]`.
pub fn random_matrices(seed: u64, count: usize, n: usize, width: usize) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_matrix(&mut rng, n, width)).collect()
}

/// Widest tuple appearing in either polynomial.
pub fn width_of(polys: &[&PluckerPoly]) -> usize {
    polys
        .iter()
        .flat_map(|p| p.monomials())
        .flat_map(|m| m.factors().iter().map(Vec::len))
        .max()
        .unwrap_or(1)
}

/// True when `a` and `b` take equal values on `count` seeded random matrices.
pub fn agree(a: &PluckerPoly, b: &PluckerPoly, seed: u64, count: usize) -> Result<bool> {
    let n = a.n().max(b.n()).max(1);
    let w = width_of(&[a, b]);
    for m in random_matrices(seed, count, n, w) {
        let mut ev = Evaluator::new(&m);
        if ev.poly(a)? != ev.poly(b)? {
            return Ok(false);
        }
    }
    Ok(true)
}
