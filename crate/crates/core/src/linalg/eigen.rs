//! Cyclic Jacobi diagonalization of complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot a_pq with a diagonal
//! unitary, then applies the classical real rotation that annihilates it.
//! Sweeps repeat until the off-diagonal Frobenius norm drops below
//! `OFF_DIAGONAL_RTOL * ‖A‖_F`, or until rounding stalls progress once the
//! off-diagonal part is already negligible. At the sizes used here (≤ 144)
//! this takes well under 15 sweeps.

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const OFF_DIAGONAL_RTOL: f64 = 1e-15;
const STALL_RTOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Real eigenvalues sorted ascending, together with the tolerance used to
/// resolve multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Groups consecutive eigenvalues closer than `tolerance` into
    /// (mean value, multiplicity) pairs.
    pub fn multiplets(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.eigenvalues {
            match out.last_mut() {
                Some((_, count, total)) if (x - *total / *count as f64).abs() <= self.tolerance => {
                    *count += 1;
                    *total += x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter()
            .map(|(_, count, total)| (total / count as f64, count))
            .collect()
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition M = V·diag(λ)·V† of a Hermitian matrix.
///
/// Fails with `NotHermitian` when max |M − M†| exceeds `tol`; the input is
/// symmetrized before iterating. Eigenvectors are the columns of the returned
/// matrix, in the same (ascending) order as the spectrum.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<(Spectrum, ComplexMatrix)> {
    let n = m.square_dim()?;
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian(defect));
    }
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = OFF_DIAGONAL_RTOL * scale;

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > target && scale > 0.0 {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        let previous = off;
        off = off_diagonal_norm(&a);
        if off < STALL_RTOL * scale && off > 0.5 * previous {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((
        Spectrum {
            eigenvalues,
            tolerance: tol,
        },
        vectors,
    ))
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Eigenvalues only.
pub fn eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    hermitian_eig(m, tol).map(|(s, _)| s)
}

/// Hermiticity tolerance scaled to the matrix, for operators this crate
/// builds itself (Hermitian up to rounding).
pub fn default_hermitian_tol(m: &ComplexMatrix) -> f64 {
    1e-9 * m.max_abs().max(1.0)
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(m, default_hermitian_tol(m))?.min())
}

/// Sum of singular values, from the eigenvalues of M†M.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let mm = &m.adjoint() * m;
    let spec = eigenvalues(&mm, default_hermitian_tol(&mm))?;
    Ok(spec.eigenvalues.iter().map(|&x| x.max(0.0).sqrt()).sum())
}

/// Rank of the matrix whose columns are `vectors`.
///
/// Singular values are recovered as square roots of Gram-matrix eigenvalues,
/// so anything below ~1e-8 of the largest one is rounding noise; `tol` should
/// sit above that (1e-6 is a sensible default).
pub fn numerical_rank(vectors: &[Vec<C64>], tol: f64) -> Result<usize> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    if let Some(bad) = vectors.iter().find(|v| v.len() != first.len()) {
        return Err(Error::DimensionMismatch {
            expected: first.len(),
            found: bad.len(),
        });
    }
    let k = vectors.len();
    let gram = ComplexMatrix::from_fn(k, k, |i, j| super::matrix::inner(&vectors[i], &vectors[j]));
    let spec = eigenvalues(&gram, default_hermitian_tol(&gram))?;
    let singular: Vec<f64> = spec
        .eigenvalues
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    let largest = singular.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(singular.iter().filter(|&&s| s > tol * largest).count())
}
