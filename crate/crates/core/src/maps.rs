//! Positive-map families on matrix algebras and their parameters.
//!
//! A [`MapDescriptor`] names a family and carries its parameters; it is
//! materialized only by [`apply_map`]. The families are
//!
//! * `Reduction`: R_K(X) = 1·Tr X − X on M_K,
//! * `MapI`, `MapII`: the two block versions of R_2 on M_{2K},
//! * `Robertson4`: Robertson's map on M_4,
//! * `Psi2K`: its block generalization using R_K in the off-diagonal blocks,
//! * `PhiU4N`: Φ^U on M_{4N}, parametrized by an antisymmetric U with UU† ≤ 1,
//! * `BreuerHall`: Λ^U(X) = R_{2K}(X) − U Xᵀ U†,
//! * `ConjugatedPhiU`: X ↦ V1† Φ^U(V2 X V2†) V1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, BlockView, ComplexMatrix, C64, I, ZERO};
use crate::sampling;

/// Tolerance for the antisymmetry/unitarity/contraction checks on parameters.
pub const PARAMETER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Reduction,
    MapI,
    MapII,
    Robertson4,
    Psi2K,
    PhiU4N,
    BreuerHall,
    ConjugatedPhiU,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Reduction => "Reduction",
            Family::MapI => "MapI",
            Family::MapII => "MapII",
            Family::Robertson4 => "Robertson4",
            Family::Psi2K => "Psi2K",
            Family::PhiU4N => "PhiU4N",
            Family::BreuerHall => "BreuerHall",
            Family::ConjugatedPhiU => "ConjugatedPhiU",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the orthogonal factor V in U = V·U0·Vᵀ is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitaryMode {
    RealOrthogonal,
    ComplexUnitary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapDescriptor {
    family: Family,
    size: usize,
    u: Option<ComplexMatrix>,
    v1: Option<ComplexMatrix>,
    v2: Option<ComplexMatrix>,
}

impl MapDescriptor {
    fn plain(family: Family, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter(format!(
                "{family} needs a positive size parameter"
            )));
        }
        Ok(Self {
            family,
            size,
            u: None,
            v1: None,
            v2: None,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// K for the 2K-dimensional families and the reduction map, N for the
    /// 4N-dimensional ones, 2 for `Robertson4`.
    pub fn size_param(&self) -> usize {
        self.size
    }

    pub fn u(&self) -> Option<&ComplexMatrix> {
        self.u.as_ref()
    }

    pub fn v1(&self) -> Option<&ComplexMatrix> {
        self.v1.as_ref()
    }

    pub fn v2(&self) -> Option<&ComplexMatrix> {
        self.v2.as_ref()
    }

    /// Dimension d of the matrices the map acts on (input = output).
    pub fn dim(&self) -> usize {
        match self.family {
            Family::Reduction => self.size,
            Family::MapI | Family::MapII | Family::Psi2K | Family::BreuerHall => 2 * self.size,
            Family::Robertson4 => 4,
            Family::PhiU4N | Family::ConjugatedPhiU => 4 * self.size,
        }
    }

    /// True when U is present and unitary (not merely a contraction).
    pub fn has_unitary_u(&self) -> bool {
        self.u.as_ref().is_some_and(|u| {
            (u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(u.rows())) <= PARAMETER_TOL
        })
    }

    /// For Φ^U and its conjugated variant, the underlying Φ^U.
    pub fn base_phi(&self) -> Option<MapDescriptor> {
        match self.family {
            Family::PhiU4N | Family::ConjugatedPhiU => Some(MapDescriptor {
                family: Family::PhiU4N,
                size: self.size,
                u: self.u.clone(),
                v1: None,
                v2: None,
            }),
            _ => None,
        }
    }
}

pub fn reduction_map(k: usize) -> Result<MapDescriptor> {
    MapDescriptor::plain(Family::Reduction, k)
}

pub fn map_i(k: usize) -> Result<MapDescriptor> {
    MapDescriptor::plain(Family::MapI, k)
}

pub fn map_ii(k: usize) -> Result<MapDescriptor> {
    MapDescriptor::plain(Family::MapII, k)
}

pub fn robertson4() -> MapDescriptor {
    MapDescriptor {
        family: Family::Robertson4,
        size: 2,
        u: None,
        v1: None,
        v2: None,
    }
}

pub fn psi_2k(k: usize) -> Result<MapDescriptor> {
    MapDescriptor::plain(Family::Psi2K, k)
}

/// Φ^U on M_{4N}. `u` must be a 2N×2N antisymmetric contraction; the
/// closed-form results elsewhere in the crate additionally need it unitary.
pub fn phi_u(n: usize, u: ComplexMatrix) -> Result<MapDescriptor> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    validate_u(&u, 2 * n, false)?;
    Ok(MapDescriptor {
        family: Family::PhiU4N,
        size: n,
        u: Some(u),
        v1: None,
        v2: None,
    })
}

/// Λ^U on M_{2K}; `u` must be antisymmetric and unitary.
pub fn breuer_hall(u: ComplexMatrix) -> Result<MapDescriptor> {
    let dim = u.square_dim()?;
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::InvalidU(format!(
            "Breuer-Hall needs an even dimension, got {dim}"
        )));
    }
    validate_u(&u, dim, true)?;
    Ok(MapDescriptor {
        family: Family::BreuerHall,
        size: dim / 2,
        u: Some(u),
        v1: None,
        v2: None,
    })
}

pub fn conjugated_phi(
    n: usize,
    u: ComplexMatrix,
    v1: ComplexMatrix,
    v2: ComplexMatrix,
) -> Result<MapDescriptor> {
    let base = phi_u(n, u)?;
    for v in [&v1, &v2] {
        if v.dim() != (4 * n, 4 * n) {
            return Err(Error::DimensionMismatch {
                expected: 4 * n,
                found: v.rows(),
            });
        }
        let defect = v.unitarity_defect();
        if defect > PARAMETER_TOL {
            return Err(Error::NotUnitary(defect));
        }
    }
    Ok(MapDescriptor {
        family: Family::ConjugatedPhiU,
        size: n,
        u: base.u,
        v1: Some(v1),
        v2: Some(v2),
    })
}

/// Checks Uᵀ = −U and UU† ≤ 1 (or UU† = 1 when `unitary` is set).
pub fn validate_u(u: &ComplexMatrix, dim: usize, unitary: bool) -> Result<()> {
    if u.dim() != (dim, dim) {
        return Err(Error::InvalidU(format!(
            "expected {dim}x{dim}, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let anti = u.antisymmetry_defect();
    if anti > PARAMETER_TOL {
        return Err(Error::InvalidU(format!(
            "not antisymmetric (max |U^T + U| = {anti:e})"
        )));
    }
    let uu = u * &u.adjoint();
    if unitary {
        let defect = uu.max_abs_diff(&ComplexMatrix::identity(dim));
        if defect > PARAMETER_TOL {
            return Err(Error::InvalidU(format!(
                "not unitary (max |UU^dagger - I| = {defect:e})"
            )));
        }
    } else {
        let top = eigenvalues(&uu, 1e-9)?.max();
        if top > 1.0 + PARAMETER_TOL {
            return Err(Error::InvalidU(format!(
                "not a contraction (largest eigenvalue of UU^dagger = {top})"
            )));
        }
    }
    Ok(())
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![ZERO, -I, I, ZERO]).expect("2x2")
}

/// U0 = σ_y ⊕ … ⊕ σ_y (N copies).
pub fn canonical_u0(n: usize) -> ComplexMatrix {
    ComplexMatrix::direct_sum(&vec![sigma_y(); n])
}

/// U = V·U0·Vᵀ with V orthogonal (or unitary) drawn from `seed`. The result
/// is antisymmetric and unitary because Vᵀ·V̄ = 1 for any unitary V.
pub fn random_antisymmetric_unitary(n: usize, seed: u64, mode: UnitaryMode) -> ComplexMatrix {
    let mut rng = sampling::rng(seed);
    let v = sampling::random_orthonormal(&mut rng, 2 * n, mode == UnitaryMode::ComplexUnitary);
    antisymmetric_from(&v, n)
}

/// V·U0·Vᵀ for a given 2N×2N unitary V.
pub fn antisymmetric_from(v: &ComplexMatrix, n: usize) -> ComplexMatrix {
    &(v * &canonical_u0(n)) * &v.transpose()
}

fn reduction(x: &ComplexMatrix) -> ComplexMatrix {
    let n = x.rows();
    let tr = x.trace();
    let mut out = -x;
    for i in 0..n {
        out[(i, i)] += tr;
    }
    out
}

fn scalar_identity(k: usize, s: C64) -> ComplexMatrix {
    ComplexMatrix::identity(k).scale(s)
}

/// U·Xᵀ·U†.
fn twisted_transpose(u: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    &(u * &x.transpose()) * &u.adjoint()
}

/// (1/norm)·[[1·Tr X22, −A12], [−A21, 1·Tr X11]], the shape shared by
/// MapII, Robertson4, Psi2K and Φ^U.
fn trace_swap_form(
    b: &BlockView,
    a12: &ComplexMatrix,
    a21: &ComplexMatrix,
    norm: f64,
) -> ComplexMatrix {
    let out = BlockView {
        k: b.k,
        x11: scalar_identity(b.k, b.x22.trace()),
        x12: -a12,
        x21: -a21,
        x22: scalar_identity(b.k, b.x11.trace()),
    };
    out.assemble().scale_real(1.0 / norm)
}

fn apply_phi_u(n: usize, u: &ComplexMatrix, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let b = BlockView::split(x, 2 * n)?;
    let c12 = &b.x12 + &twisted_transpose(u, &b.x21);
    let c21 = &b.x21 + &twisted_transpose(u, &b.x12);
    Ok(trace_swap_form(&b, &c12, &c21, 2.0 * n as f64))
}

/// Image of `x` under the map described by `m`.
pub fn apply_map(m: &MapDescriptor, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = x.square_dim()?;
    if d != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: d,
        });
    }
    let k = m.size;
    match m.family {
        Family::Reduction => Ok(reduction(x)),
        Family::MapI => {
            let b = BlockView::split(x, k)?;
            let out = BlockView {
                k,
                x11: b.x22.clone(),
                x12: -&b.x12,
                x21: -&b.x21,
                x22: b.x11.clone(),
            };
            Ok(out.assemble().scale_real(1.0 / k as f64))
        }
        Family::MapII => {
            let b = BlockView::split(x, k)?;
            Ok(trace_swap_form(&b, &b.x12, &b.x21, k as f64))
        }
        Family::Robertson4 | Family::Psi2K => {
            let half = if m.family == Family::Robertson4 { 2 } else { k };
            let b = BlockView::split(x, half)?;
            let a12 = &b.x12 + &reduction(&b.x21);
            let a21 = &b.x21 + &reduction(&b.x12);
            Ok(trace_swap_form(&b, &a12, &a21, half as f64))
        }
        Family::PhiU4N => apply_phi_u(k, m.u.as_ref().expect("PhiU4N carries U"), x),
        Family::BreuerHall => {
            let u = m.u.as_ref().expect("BreuerHall carries U");
            Ok(&reduction(x) - &twisted_transpose(u, x))
        }
        Family::ConjugatedPhiU => {
            let u = m.u.as_ref().expect("ConjugatedPhiU carries U");
            let v1 = m.v1.as_ref().expect("ConjugatedPhiU carries V1");
            let v2 = m.v2.as_ref().expect("ConjugatedPhiU carries V2");
            let inner = apply_phi_u(k, u, &x.conjugate_by(v2)?)?;
            inner.conjugate_by(&v1.adjoint())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, ONE};
    use crate::sampling::{gaussian_matrix, random_unit_vector, random_unitary, rng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn generic_2x2() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.5), c(2.0, -1.0), c(3.0, 0.25), c(4.0, 2.0)],
        )
        .unwrap()
    }

    #[test]
    fn reduction_k2_swaps_diagonal_and_negates_off_diagonal() {
        let x = generic_2x2();
        let y = apply_map(&reduction_map(2).unwrap(), &x).unwrap();
        let expected =
            ComplexMatrix::new(2, 2, vec![x[(1, 1)], -x[(0, 1)], -x[(1, 0)], x[(0, 0)]]).unwrap();
        assert!(y.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn reduction_of_rank_one_projector_is_complement() {
        let mut r = rng(4);
        let psi = random_unit_vector(&mut r, 2);
        let p = ComplexMatrix::outer(&psi, &psi);
        let y = apply_map(&reduction_map(2).unwrap(), &p).unwrap();
        assert!(y.max_abs_diff(&(&ComplexMatrix::identity(2) - &p)) < 1e-15);
        let s = eigenvalues(&y, 1e-12).unwrap();
        assert!(s.eigenvalues[0].abs() < 1e-14 && (s.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reduction_identity_and_trace() {
        for k in 1..5 {
            let m = reduction_map(k).unwrap();
            let y = apply_map(&m, &ComplexMatrix::identity(k)).unwrap();
            assert!(y.max_abs_diff(&ComplexMatrix::identity(k).scale_real(k as f64 - 1.0)) < 1e-15);
            let x = gaussian_matrix(&mut rng(k as u64), k, true);
            let tr = apply_map(&m, &x).unwrap().trace();
            assert!((tr - x.trace() * (k as f64 - 1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn map_i_reduces_to_r2_at_k1() {
        let x = generic_2x2();
        let a = apply_map(&map_i(1).unwrap(), &x).unwrap();
        let b = apply_map(&reduction_map(2).unwrap(), &x).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);
        // map II at K = 1 as well: 1·Tr x22 is just x22
        let c = apply_map(&map_ii(1).unwrap(), &x).unwrap();
        assert!(c.max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn map_ii_is_unital() {
        let y = apply_map(&map_ii(2).unwrap(), &ComplexMatrix::identity(4)).unwrap();
        assert!(y.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn phi_u_unital_on_identity() {
        let m = phi_u(1, sigma_y()).unwrap();
        let y = apply_map(&m, &ComplexMatrix::identity(4)).unwrap();
        assert!(y.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    /// Scalar transcription of the Φ^U block formula, entry by entry.
    fn phi_u_oracle(n: usize, u: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
        let h = 2 * n;
        let mut y = ComplexMatrix::zeros(2 * h, 2 * h);
        let mut tr11 = ZERO;
        let mut tr22 = ZERO;
        for i in 0..h {
            tr11 += x[(i, i)];
            tr22 += x[(h + i, h + i)];
        }
        for i in 0..h {
            y[(i, i)] = tr22;
            y[(h + i, h + i)] = tr11;
        }
        for i in 0..h {
            for j in 0..h {
                // (U Bᵀ U†)_ij = Σ_ab U_ia B_ba conj(U_jb)
                let mut t21 = ZERO;
                let mut t12 = ZERO;
                for a in 0..h {
                    for b in 0..h {
                        t21 += u[(i, a)] * x[(h + b, a)] * u[(j, b)].conj();
                        t12 += u[(i, a)] * x[(b, h + a)] * u[(j, b)].conj();
                    }
                }
                y[(i, h + j)] = -(x[(i, h + j)] + t21);
                y[(h + i, j)] = -(x[(h + i, j)] + t12);
            }
        }
        y.scale_real(1.0 / h as f64)
    }

    #[test]
    fn phi_u_on_first_projector() {
        let m = phi_u(1, sigma_y()).unwrap();
        let y = apply_map(&m, &ComplexMatrix::unit(4, 0, 0)).unwrap();
        let expected = ComplexMatrix::diagonal(&[ZERO, ZERO, c(0.5, 0.0), c(0.5, 0.0)]);
        assert!(y.max_abs_diff(&expected) < 1e-15);
        let oracle = phi_u_oracle(1, &sigma_y(), &ComplexMatrix::unit(4, 0, 0));
        assert!(oracle.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn phi_u_matches_scalar_oracle_on_random_input() {
        for n in 1..=2 {
            let u = random_antisymmetric_unitary(n, 9, UnitaryMode::ComplexUnitary);
            let m = phi_u(n, u.clone()).unwrap();
            let x = gaussian_matrix(&mut rng(n as u64 + 100), 4 * n, true);
            let y = apply_map(&m, &x).unwrap();
            assert!(y.max_abs_diff(&phi_u_oracle(n, &u, &x)) < 1e-12);
        }
    }

    #[test]
    fn map_ii_equals_phi_with_zero_u() {
        for n in 1..=2 {
            let a = map_ii(2 * n).unwrap();
            let b = phi_u(n, ComplexMatrix::zeros(2 * n, 2 * n)).unwrap();
            let x = gaussian_matrix(&mut rng(7), 4 * n, true);
            let d = apply_map(&a, &x)
                .unwrap()
                .max_abs_diff(&apply_map(&b, &x).unwrap());
            assert!(d < 1e-12);
        }
    }

    #[test]
    fn psi4_coincides_with_phi_sigma_y() {
        let x = gaussian_matrix(&mut rng(1), 4, true);
        let a = apply_map(&psi_2k(2).unwrap(), &x).unwrap();
        let b = apply_map(&phi_u(1, sigma_y()).unwrap(), &x).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn psi_2k_is_unital() {
        for k in 1..5 {
            let y = apply_map(&psi_2k(k).unwrap(), &ComplexMatrix::identity(2 * k)).unwrap();
            assert!(y.max_abs_diff(&ComplexMatrix::identity(2 * k)) < 1e-15);
        }
    }

    #[test]
    fn breuer_hall_on_identity() {
        for k in [1, 2, 3] {
            let u = random_antisymmetric_unitary(k, 5, UnitaryMode::ComplexUnitary);
            let y = apply_map(&breuer_hall(u).unwrap(), &ComplexMatrix::identity(2 * k)).unwrap();
            let expected = ComplexMatrix::identity(2 * k).scale_real(2.0 * k as f64 - 2.0);
            assert!(y.max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn robertson_is_half_breuer_hall_at_u0() {
        // Λ^{U0}_4(1) = 2·1 while Φ_4(1) = 1: equal after unital rescaling.
        let bh = breuer_hall(canonical_u0(2)).unwrap();
        for seed in 0..10 {
            let x = gaussian_matrix(&mut rng(seed), 4, true);
            let a = apply_map(&robertson4(), &x).unwrap();
            let b = apply_map(&bh, &x).unwrap().scale_real(0.5);
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn canonical_u0_is_antisymmetric_unitary() {
        assert_eq!(canonical_u0(1), sigma_y());
        let u = canonical_u0(2);
        assert_eq!(u.dim(), (4, 4));
        assert!(validate_u(&u, 4, true).is_ok());
        assert_eq!(u.submatrix(2, 2, 2, 2), sigma_y());
        assert_eq!(u.submatrix(0, 2, 2, 2), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn u0_kills_psi_psi_conjugate() {
        let mut r = rng(21);
        for n in 1..=3 {
            let u = canonical_u0(n);
            let psi = random_unit_vector(&mut r, 2 * n);
            let conj: Vec<C64> = psi.iter().map(|z| z.conj()).collect();
            let upsi = u.apply(&conj).unwrap();
            assert!(inner(&psi, &upsi).norm() < 1e-15);
        }
    }

    #[test]
    fn random_antisymmetric_unitary_modes() {
        for mode in [UnitaryMode::RealOrthogonal, UnitaryMode::ComplexUnitary] {
            for seed in 0..5 {
                let u = random_antisymmetric_unitary(3, seed, mode);
                assert!(u.antisymmetry_defect() < 1e-12);
                assert!(u.unitarity_defect() < 1e-12);
            }
            let a = random_antisymmetric_unitary(2, 1, mode);
            let b = random_antisymmetric_unitary(2, 2, mode);
            assert!(a.max_abs_diff(&b) > 1e-3);
        }
        assert_eq!(
            antisymmetric_from(&ComplexMatrix::identity(4), 2),
            canonical_u0(2)
        );
    }

    #[test]
    fn invalid_u_is_rejected() {
        // symmetric
        assert!(phi_u(1, ComplexMatrix::identity(2)).is_err());
        // antisymmetric but not a contraction
        assert!(phi_u(1, sigma_y().scale_real(2.0)).is_err());
        // contraction is fine for Φ^U, not for Breuer-Hall
        assert!(phi_u(1, sigma_y().scale_real(0.5)).is_ok());
        assert!(breuer_hall(sigma_y().scale_real(0.5)).is_err());
        // wrong size
        assert!(phi_u(2, sigma_y()).is_err());
        assert!(breuer_hall(ComplexMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let m = phi_u(1, sigma_y()).unwrap();
        assert!(matches!(
            apply_map(&m, &ComplexMatrix::identity(8)),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 8
            })
        ));
    }

    #[test]
    fn conjugated_with_identities_is_phi() {
        let u = random_antisymmetric_unitary(1, 3, UnitaryMode::ComplexUnitary);
        let plain = phi_u(1, u.clone()).unwrap();
        let conj =
            conjugated_phi(1, u, ComplexMatrix::identity(4), ComplexMatrix::identity(4)).unwrap();
        let x = gaussian_matrix(&mut rng(8), 4, true);
        let d = apply_map(&plain, &x)
            .unwrap()
            .max_abs_diff(&apply_map(&conj, &x).unwrap());
        assert!(d < 1e-15);
    }

    #[test]
    fn conjugated_is_unital() {
        let m = conjugated_phi(
            2,
            canonical_u0(2),
            random_unitary(8, 1),
            random_unitary(8, 2),
        )
        .unwrap();
        let y = apply_map(&m, &ComplexMatrix::identity(8)).unwrap();
        assert!(y.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn conjugated_rejects_non_unitary() {
        let bad = ComplexMatrix::identity(4).scale_real(1.1);
        assert!(matches!(
            conjugated_phi(1, sigma_y(), bad, ComplexMatrix::identity(4)),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn reduction_2k_is_not_a_twisted_transpose() {
        // Tr R_{2K}(|1⟩⟨1|) = 2K − 1 but Tr U|1⟩⟨1|U† = 1.
        for k in 2..5 {
            let e = ComplexMatrix::unit(2 * k, 0, 0);
            let r = apply_map(&reduction_map(2 * k).unwrap(), &e).unwrap();
            assert!((r.trace() - c(2.0 * k as f64 - 1.0, 0.0)).norm() < 1e-15);
            let u = random_antisymmetric_unitary(k, 0, UnitaryMode::ComplexUnitary);
            assert!((e.conjugate_by(&u).unwrap().trace() - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn size_zero_is_rejected() {
        assert!(reduction_map(0).is_err());
        assert!(psi_2k(0).is_err());
        assert!(phi_u(0, ComplexMatrix::zeros(0, 0)).is_err());
    }
}
