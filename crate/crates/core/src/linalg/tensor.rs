//! Operations on bipartite operators acting on C^dA ⊗ C^dB.
//!
//! Composite indices follow the Kronecker convention: |k⟩ ⊗ |a⟩ sits at
//! row `k * dB + a`.

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    ComplexMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

fn check_bipartite(m: &ComplexMatrix, da: usize, db: usize) -> Result<()> {
    let n = m.square_dim()?;
    if n != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: n,
        });
    }
    Ok(())
}

/// Transposes one tensor factor of `m`.
pub fn partial_transpose(
    m: &ComplexMatrix,
    da: usize,
    db: usize,
    subsystem: Subsystem,
) -> Result<ComplexMatrix> {
    check_bipartite(m, da, db)?;
    let n = da * db;
    Ok(ComplexMatrix::from_fn(n, n, |row, col| {
        let (i, a) = (row / db, row % db);
        let (j, b) = (col / db, col % db);
        match subsystem {
            Subsystem::A => m[(j * db + a, i * db + b)],
            Subsystem::B => m[(i * db + b, j * db + a)],
        }
    }))
}

/// Realignment ⟨i j|R(M)|a b⟩ = ⟨i a|M|j b⟩, the rearrangement used by the
/// computable cross-norm criterion. Requires dA = dB.
pub fn realign(m: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    check_bipartite(m, d, d)?;
    let n = d * d;
    Ok(ComplexMatrix::from_fn(n, n, |row, col| {
        let (i, j) = (row / d, row % d);
        let (a, b) = (col / d, col % d);
        m[(i * d + a, j * d + b)]
    }))
}

/// (⟨v| ⊗ 1) M (|v⟩ ⊗ 1) for subsystem A, or (1 ⊗ ⟨v|) M (1 ⊗ |v⟩) for B.
pub fn contract_factor(
    m: &ComplexMatrix,
    da: usize,
    db: usize,
    subsystem: Subsystem,
    v: &[C64],
) -> Result<ComplexMatrix> {
    check_bipartite(m, da, db)?;
    let (fixed, free) = match subsystem {
        Subsystem::A => (da, db),
        Subsystem::B => (db, da),
    };
    if v.len() != fixed {
        return Err(Error::DimensionMismatch {
            expected: fixed,
            found: v.len(),
        });
    }
    let idx = |f: usize, r: usize| match subsystem {
        Subsystem::A => f * db + r,
        Subsystem::B => r * db + f,
    };
    Ok(ComplexMatrix::from_fn(free, free, |r, s| {
        let mut acc = C64::new(0.0, 0.0);
        for (p, vp) in v.iter().enumerate() {
            for (q, vq) in v.iter().enumerate() {
                acc += vp.conj() * m[(idx(p, r), idx(q, s))] * vq;
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{I, ONE, ZERO};

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let k = kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(k, ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_with_projector_embeds_block() {
        let p = ComplexMatrix::unit(2, 0, 0);
        let x = ComplexMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 + 1.0, j as f64));
        let k = kron(&p, &x);
        assert_eq!(k.submatrix(0, 0, 3, 3), x);
        assert_eq!(k.submatrix(3, 3, 3, 3), ComplexMatrix::zeros(3, 3));
        assert_eq!(k.submatrix(0, 3, 3, 3), ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn sigma_y_kron_squares_to_identity() {
        let k = kron(&sigma_y(), &sigma_y());
        // direct 4x4 product, entry by entry
        let mut sq = ComplexMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                for l in 0..4 {
                    sq[(i, j)] += k[(i, l)] * k[(l, j)];
                }
            }
        }
        assert!(sq.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn partial_transpose_of_bell_projector_is_half_swap() {
        let mut bell = ComplexMatrix::zeros(4, 4);
        for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell[(r, c)] = C64::new(0.5, 0.0);
        }
        let pt = partial_transpose(&bell, 2, 2, Subsystem::B).unwrap();
        let mut swap = ComplexMatrix::zeros(4, 4);
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(r, c)] = C64::new(0.5, 0.0);
        }
        assert_eq!(pt, swap);
        // partial transpose on A gives the same operator for this symmetric state
        assert_eq!(partial_transpose(&bell, 2, 2, Subsystem::A).unwrap(), swap);
    }

    #[test]
    fn partial_transpose_rejects_wrong_dims() {
        let m = ComplexMatrix::identity(6);
        assert!(partial_transpose(&m, 2, 2, Subsystem::A).is_err());
    }

    #[test]
    fn partial_transpose_of_product_transposes_factor() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64, 2.0 * j as f64 + 1.0));
        let b = ComplexMatrix::from_fn(3, 3, |i, j| C64::new((i + 2 * j) as f64, -(i as f64)));
        let ab = kron(&a, &b);
        let pt_b = partial_transpose(&ab, 2, 3, Subsystem::B).unwrap();
        assert!(pt_b.max_abs_diff(&kron(&a, &b.transpose())) < 1e-15);
        let pt_a = partial_transpose(&ab, 2, 3, Subsystem::A).unwrap();
        assert!(pt_a.max_abs_diff(&kron(&a.transpose(), &b)) < 1e-15);
    }

    #[test]
    fn realign_of_product_is_vec_outer_product() {
        // R(A ⊗ B) = |vec A⟩⟨vec B̄| in row-major vectorization
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64 + 1.0, j as f64));
        let b = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(j as f64, 1.0 - i as f64));
        let r = realign(&kron(&a, &b), 2).unwrap();
        let expected = ComplexMatrix::from_fn(4, 4, |row, col| {
            a[(row / 2, row % 2)] * b[(col / 2, col % 2)]
        });
        assert!(r.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn contract_factor_on_product_state() {
        let a = ComplexMatrix::from_real(&[&[2.0, 0.0], &[0.0, 3.0]]);
        let b = ComplexMatrix::from_real(&[&[1.0, 1.0], &[1.0, 5.0]]);
        let m = kron(&a, &b);
        let e0 = vec![ONE, ZERO];
        let on_b = contract_factor(&m, 2, 2, Subsystem::A, &e0).unwrap();
        assert!(on_b.max_abs_diff(&b.scale_real(2.0)) < 1e-15);
        let on_a = contract_factor(&m, 2, 2, Subsystem::B, &e0).unwrap();
        assert!(on_a.max_abs_diff(&a) < 1e-15);
    }
}
