//! The PPT entangled state detected by W^U_{4N} and the isotropic family.

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, partial_transpose, ComplexMatrix, Subsystem, C64};
use crate::maps::Family;
use crate::witness::{max_entangled, Witness};

/// Slack allowed when a constructor checks its own output.
const STATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    rho: ComplexMatrix,
    d: usize,
    label: String,
}

impl DensityOperator {
    /// Wraps `rho` after checking Hermiticity, unit trace and positivity.
    pub fn new(rho: ComplexMatrix, d: usize, label: impl Into<String>) -> Result<Self> {
        let n = rho.square_dim()?;
        if n != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: n,
            });
        }
        let defect = rho.hermiticity_defect();
        if defect > 1e-12 {
            return Err(Error::NotHermitian(defect));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("trace {tr} is not 1")));
        }
        let min = min_eigenvalue(&rho)?;
        if min < -STATE_TOL {
            return Err(Error::InvalidParameter(format!(
                "not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(Self {
            rho,
            d,
            label: label.into(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose(&self.rho, self.d, self.d, Subsystem::B).expect("state is d^2 x d^2")
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }
}

/// 𝒩 = 1/(8N²(1 + 4N)).
pub fn ppt_normalization(n: usize) -> f64 {
    let nf = n as f64;
    1.0 / (8.0 * nf * nf * (1.0 + 4.0 * nf))
}

/// ρ = 𝒩 Σ_{i,j} |i⟩⟨j| ⊗ ρ_ij on C^{4N} ⊗ C^{4N}, with
///
/// * ρ_ii = diag(4N·1, 1) for i < 2N and diag(1, 4N·1) for i ≥ 2N,
/// * ρ_{i,i+2N} = −8N²·W_{i,i+2N} (the (i, i+2N) block of W),
/// * ρ_ij = |i⟩⟨j| for the other pairs i < 2N ≤ j,
/// * ρ_ji = ρ_ij†, everything else zero.
///
/// The result is checked to be a PPT density operator before it is returned.
pub fn ppt_entangled_state(n: usize, w: &Witness) -> Result<DensityOperator> {
    let d = 4 * n;
    let rho = ppt_entangled_matrix(n, w)?;
    let min_pt = min_eigenvalue(&partial_transpose(&rho, d, d, Subsystem::B)?)?;
    if min_pt < -STATE_TOL {
        return Err(Error::InvalidParameter(format!(
            "constructed state is not PPT (min eigenvalue of the partial transpose {min_pt:e})"
        )));
    }
    DensityOperator::new(rho, d, format!("ppt-entangled N={n}"))
}

/// The matrix of [`ppt_entangled_state`] without the state checks, so that
/// certificates can measure its properties instead of failing on them.
pub fn ppt_entangled_matrix(n: usize, w: &Witness) -> Result<ComplexMatrix> {
    if w.family() != Family::PhiU4N || w.n() != Some(n) || !w.source().has_unitary_u() {
        return Err(Error::WitnessMismatch(format!(
            "need the witness of Phi^U_{{4N}} with unitary U and N = {n}, got {} ({:?})",
            w.family(),
            w.n()
        )));
    }
    let d = 4 * n;
    let half = 2 * n;
    let big = 4.0 * n as f64;
    let wm = w.matrix();
    let mut rho = ComplexMatrix::zeros(d * d, d * d);

    for i in 0..d {
        let diag: Vec<C64> = (0..d)
            .map(|a| {
                let heavy = (i < half) == (a < half);
                C64::new(if heavy { big } else { 1.0 }, 0.0)
            })
            .collect();
        rho.set_submatrix(i * d, i * d, &ComplexMatrix::diagonal(&diag));
    }
    for i in 0..half {
        for j in half..d {
            let block = if j == i + half {
                wm.submatrix(i * d, j * d, d, d)
                    .scale_real(-8.0 * (n * n) as f64)
            } else {
                ComplexMatrix::unit(d, i, j)
            };
            rho.set_submatrix(j * d, i * d, &block.adjoint());
            rho.set_submatrix(i * d, j * d, &block);
        }
    }
    Ok(rho.scale_real(ppt_normalization(n)))
}

/// ρ_λ = (λ/d²)·1 + (1 − λ)·P⁺_d for λ ∈ [0, 1].
pub fn isotropic_state(d: usize, lambda: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    DensityOperator::new(
        isotropic_matrix(d, lambda),
        d,
        format!("isotropic lambda={lambda}"),
    )
}

/// The isotropic formula without the range check, for evaluating the
/// detection curve outside the state region.
pub fn isotropic_matrix(d: usize, lambda: f64) -> ComplexMatrix {
    let dd = (d * d) as f64;
    &ComplexMatrix::identity(d * d).scale_real(lambda / dd)
        + &max_entangled(d).scale_real(1.0 - lambda)
}

/// ρ_λ on C^{4N} ⊗ C^{4N} is entangled iff λ < 4N/(4N + 1).
pub fn isotropic_entanglement_threshold(n: usize) -> f64 {
    let d = 4.0 * n as f64;
    d / (d + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues;
    use crate::maps::{canonical_u0, phi_u, random_antisymmetric_unitary, UnitaryMode};
    use crate::witness::choi;

    fn state(n: usize, u: ComplexMatrix) -> (Witness, DensityOperator) {
        let w = choi(&phi_u(n, u).unwrap()).unwrap();
        let rho = ppt_entangled_state(n, &w).unwrap();
        (w, rho)
    }

    #[test]
    fn n1_blocks_and_normalization() {
        assert!((ppt_normalization(1) - 1.0 / 40.0).abs() < 1e-16);
        let (_, rho) = state(1, canonical_u0(1));
        let m = rho.matrix().scale_real(40.0);
        let diag = |i: usize| {
            (0..4)
                .map(|a| m[(i * 4 + a, i * 4 + a)].re)
                .collect::<Vec<_>>()
        };
        assert_eq!(diag(0), vec![4.0, 4.0, 1.0, 1.0]);
        assert_eq!(diag(1), vec![4.0, 4.0, 1.0, 1.0]);
        assert_eq!(diag(2), vec![1.0, 1.0, 4.0, 4.0]);
        assert_eq!(diag(3), vec![1.0, 1.0, 4.0, 4.0]);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_unit_blocks_as_written() {
        // N = 1: ρ_{0,3} = |0⟩⟨3| and ρ_{1,2} = |1⟩⟨2|, scaled by 𝒩
        let (_, rho) = state(1, canonical_u0(1));
        let m = rho.matrix();
        assert!((m[(0, 3 * 4 + 3)].re - 1.0 / 40.0).abs() < 1e-16);
        assert!((m[(4 + 1, 2 * 4 + 2)].re - 1.0 / 40.0).abs() < 1e-16);
        assert!((m[(3 * 4 + 3, 0)].re - 1.0 / 40.0).abs() < 1e-16);
    }

    #[test]
    fn ppt_and_positive_for_n1_n2() {
        for n in [1, 2] {
            for u in [
                canonical_u0(n),
                random_antisymmetric_unitary(n, 5, UnitaryMode::RealOrthogonal),
                random_antisymmetric_unitary(n, 6, UnitaryMode::ComplexUnitary),
            ] {
                let (_, rho) = state(n, u);
                assert!(min_eigenvalue(rho.matrix()).unwrap() >= -1e-10);
                assert!(min_eigenvalue(&rho.partial_transpose()).unwrap() >= -1e-10);
            }
        }
    }

    #[test]
    fn detection_value_is_minus_normalization_over_2n() {
        // block-by-block count: diagonal blocks give 𝒩, the W blocks −𝒩/N,
        // the matrix units −𝒩(2N−1)/(2N); total −𝒩/(2N)
        for n in [1, 2] {
            let (w, rho) = state(n, canonical_u0(n));
            let value = w.matrix().trace_product(rho.matrix()).unwrap();
            let expected = -ppt_normalization(n) / (2.0 * n as f64);
            assert!((value.re - expected).abs() < 1e-13, "N={n}: {value}");
            assert!(value.im.abs() < 1e-13);
        }
    }

    #[test]
    fn unnormalized_w_blocks_break_positivity() {
        // using the 1/d-free Choi blocks makes the state non-positive
        let n = 1;
        let w = choi(&phi_u(n, canonical_u0(n)).unwrap()).unwrap();
        let scaled = ComplexMatrix::from_fn(16, 16, |r, c| w.matrix()[(r, c)] * 4.0);
        let mut rho = ppt_entangled_state(n, &w).unwrap().into_matrix();
        let nn = ppt_normalization(n);
        for i in 0..2 {
            let j = i + 2;
            let block = scaled.submatrix(i * 4, j * 4, 4, 4).scale_real(-8.0 * nn);
            rho.set_submatrix(i * 4, j * 4, &block);
            rho.set_submatrix(j * 4, i * 4, &block.adjoint());
        }
        assert!(min_eigenvalue(&rho).unwrap() < -1e-3);
    }

    #[test]
    fn mismatched_witness_is_rejected() {
        let w = choi(&phi_u(1, canonical_u0(1)).unwrap()).unwrap();
        assert!(matches!(
            ppt_entangled_state(2, &w),
            Err(Error::WitnessMismatch(_))
        ));
        let contraction = canonical_u0(1).scale_real(0.5);
        let wc = choi(&phi_u(1, contraction).unwrap()).unwrap();
        assert!(ppt_entangled_state(1, &wc).is_err());
    }

    #[test]
    fn isotropic_examples() {
        let mixed = isotropic_state(4, 1.0).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(&ComplexMatrix::identity(16).scale_real(1.0 / 16.0))
                < 1e-15
        );
        let pure = isotropic_state(4, 0.0).unwrap();
        assert!(pure.matrix().max_abs_diff(&max_entangled(4)) < 1e-15);

        let half = isotropic_state(4, 0.5).unwrap();
        let spec = eigenvalues(half.matrix(), 1e-12).unwrap();
        for &x in &spec.eigenvalues[..15] {
            assert!((x - 0.5 / 16.0).abs() < 1e-12);
        }
        assert!((spec.eigenvalues[15] - (0.5 / 16.0 + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn isotropic_rejects_out_of_range() {
        assert!(matches!(
            isotropic_state(4, 1.5),
            Err(Error::LambdaOutOfRange(_))
        ));
        assert!(matches!(
            isotropic_state(4, -0.1),
            Err(Error::LambdaOutOfRange(_))
        ));
        assert!((isotropic_matrix(4, 1.5).trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_values() {
        assert!((isotropic_entanglement_threshold(1) - 0.8).abs() < 1e-15);
        assert!((isotropic_entanglement_threshold(2) - 8.0 / 9.0).abs() < 1e-15);
        let t: Vec<f64> = (1..10).map(isotropic_entanglement_threshold).collect();
        assert!(t.windows(2).all(|p| p[0] < p[1] && p[1] < 1.0));
    }
}
