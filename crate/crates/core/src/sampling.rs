//! Seeded random draws used by the constructions and the certificates.
//!
//! Everything goes through `ChaCha8Rng::seed_from_u64` so that a seed gives
//! the same numbers on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{inner, vec_norm, ComplexMatrix, C64};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn complex_gaussian(rng: &mut Rng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

pub fn gaussian_vector(rng: &mut Rng, d: usize) -> Vec<C64> {
    (0..d).map(|_| complex_gaussian(rng)).collect()
}

/// Haar-distributed unit vector in C^d.
pub fn random_unit_vector(rng: &mut Rng, d: usize) -> Vec<C64> {
    loop {
        let v = gaussian_vector(rng, d);
        let n = vec_norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

pub fn gaussian_matrix(rng: &mut Rng, n: usize, complex: bool) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| {
        if complex {
            complex_gaussian(rng)
        } else {
            C64::new(normal(rng), 0.0)
        }
    })
}

/// (G + G†)/2 for a complex Gaussian G.
pub fn random_hermitian(rng: &mut Rng, n: usize) -> ComplexMatrix {
    gaussian_matrix(rng, n, true).hermitian_part()
}

/// Orthonormalizes the columns of a square matrix with modified
/// Gram–Schmidt. Returns `None` if the columns are numerically dependent.
pub fn gram_schmidt(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = m.cols();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = m.column(j);
        // two passes keep the result orthonormal to rounding
        for _ in 0..2 {
            for q in &cols {
                let proj = inner(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = vec_norm(&v);
        if norm < 1e-10 {
            return None;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(&cols).ok()
}

/// Random orthogonal (`complex = false`) or unitary matrix, drawn by
/// orthogonalizing a Gaussian matrix.
pub fn random_orthonormal(rng: &mut Rng, n: usize, complex: bool) -> ComplexMatrix {
    loop {
        if let Some(q) = gram_schmidt(&gaussian_matrix(rng, n, complex)) {
            return q;
        }
    }
}

/// Random n×n unitary determined by `seed`.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    random_orthonormal(&mut rng(seed), n, true)
}
