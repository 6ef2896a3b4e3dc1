//! Positivity of Φ^U: random rank-1 projectors plus the Schur-complement
//! argument, replayed on random decompositions ψ = √a ψ1 ⊕ √(1−a) ψ2.

use super::{IDENTITY_TOL, POSITIVITY_TOL};
use crate::linalg::{min_eigenvalue, BlockView, ComplexMatrix, C64};
use crate::maps::{apply_map, Family, MapDescriptor};
use crate::report::CertReport;
use crate::sampling::{self, random_unit_vector};

/// Random decompositions checked by [`verify_positivity`].
pub const DEFAULT_DECOMPOSITIONS: usize = 200;

/// Minimum eigenvalue of m(|ψ⟩⟨ψ|) over `trials` Haar-random ψ, as a report
/// passing when it is ≥ −tol. Works for any map family.
pub fn sample_positivity(m: &MapDescriptor, trials: usize, seed: u64, tol: f64) -> CertReport {
    const NAME: &str = "projectors";
    let d = m.dim();
    let mut rng = sampling::rng(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let psi = random_unit_vector(&mut rng, d);
        let image = match apply_map(m, &ComplexMatrix::outer(&psi, &psi)) {
            Ok(x) => x,
            Err(e) => return CertReport::error(NAME, e),
        };
        match min_eigenvalue(&image) {
            Ok(x) => worst = worst.min(x),
            Err(e) => return CertReport::error(NAME, e),
        }
    }
    CertReport::rule(
        NAME,
        worst,
        tol,
        trials > 0 && worst >= -tol,
        format!("min eigenvalue of the image over {trials} random rank-1 projectors >= -tol"),
    )
}

/// [`verify_positivity_with`] using [`DEFAULT_DECOMPOSITIONS`].
pub fn verify_positivity(m: &MapDescriptor, trials: usize, seed: u64, tol: f64) -> CertReport {
    verify_positivity_with(m, trials, DEFAULT_DECOMPOSITIONS, seed, tol)
}

/// Two-part certificate for Φ^U (or its conjugated variant):
///
/// * `projectors`: min eigenvalue of Φ(P) ≥ −tol on `trials` random rank-1 P;
/// * `proof`: on `decompositions` random ψ = √a ψ1 ⊕ √(1−a) ψ2 (the first two
///   with a = 0 and a = 1) the image equals
///   (1/2N)[[(1−a)·1, −√(a(1−a))·M], [−√(a(1−a))·M†, a·1]] with
///   M = |ψ1⟩⟨ψ2| + U(|ψ2⟩⟨ψ1|)ᵀU†, MM† = Q + Q^U for Q = |ψ1⟩⟨ψ1| and
///   Q^U = UQᵀU†, Tr(Q·Q^U) = 0 and 1 − MM† ≥ 0.
///
/// The proof part always runs on the underlying Φ^U.
pub fn verify_positivity_with(
    m: &MapDescriptor,
    trials: usize,
    decompositions: usize,
    seed: u64,
    tol: f64,
) -> CertReport {
    const NAME: &str = "positivity";
    let Some(base) = m.base_phi() else {
        return CertReport::rule(
            NAME,
            f64::NAN,
            tol,
            false,
            format!("positivity certificate needs Phi^U, got {}", m.family()),
        );
    };
    let sampled = sample_positivity(m, trials, seed, tol);
    let proof = proof_identity(&base, decompositions, seed.wrapping_add(1), tol);
    let headline = sampled.measured;
    let mut report = CertReport::composite(NAME, headline, vec![sampled, proof]);
    if m.family() == Family::ConjugatedPhiU {
        report = report.with_details("proof identities checked on the underlying Phi^U");
    }
    report
}

struct ProofResiduals {
    block_form: f64,
    mm_dagger: f64,
    orthogonality: f64,
    schur: f64,
}

fn proof_identity(base: &MapDescriptor, samples: usize, seed: u64, tol: f64) -> CertReport {
    const NAME: &str = "proof";
    let n = base.size_param();
    let k = 2 * n;
    let u = base.u().expect("Phi^U carries U");
    let mut rng = sampling::rng(seed);
    let mut worst = ProofResiduals {
        block_form: 0.0,
        mm_dagger: 0.0,
        orthogonality: 0.0,
        schur: f64::INFINITY,
    };
    for s in 0..samples {
        let a = match s {
            0 => 0.0,
            1 => 1.0,
            _ => rand::Rng::random::<f64>(&mut rng),
        };
        let psi1 = random_unit_vector(&mut rng, k);
        let psi2 = random_unit_vector(&mut rng, k);
        match decomposition_residuals(base, u, a, &psi1, &psi2) {
            Ok(r) => {
                worst.block_form = worst.block_form.max(r.block_form);
                worst.mm_dagger = worst.mm_dagger.max(r.mm_dagger);
                worst.orthogonality = worst.orthogonality.max(r.orthogonality);
                worst.schur = worst.schur.min(r.schur);
            }
            Err(e) => return CertReport::error(NAME, e),
        }
    }
    let ok = samples > 0
        && worst.block_form <= IDENTITY_TOL
        && worst.mm_dagger <= IDENTITY_TOL
        && worst.orthogonality <= IDENTITY_TOL
        && worst.schur >= -tol.max(POSITIVITY_TOL);
    CertReport::rule(
        NAME,
        worst.mm_dagger,
        IDENTITY_TOL,
        ok,
        format!(
            "{samples} decompositions incl. a=0 and a=1: block-form residual {:.2e}, \
             |MM^dagger - Q - Q^U| {:.2e}, Tr(Q Q^U) {:.2e}, min eig(1 - MM^dagger) {:.2e}",
            worst.block_form, worst.mm_dagger, worst.orthogonality, worst.schur
        ),
    )
}

fn decomposition_residuals(
    base: &MapDescriptor,
    u: &ComplexMatrix,
    a: f64,
    psi1: &[C64],
    psi2: &[C64],
) -> crate::error::Result<ProofResiduals> {
    let k = psi1.len();
    let n = k / 2;
    let mut psi: Vec<C64> = psi1.iter().map(|z| z * a.sqrt()).collect();
    psi.extend(psi2.iter().map(|z| z * (1.0 - a).sqrt()));
    let image = apply_map(base, &ComplexMatrix::outer(&psi, &psi))?;

    let udag = u.adjoint();
    let m = &ComplexMatrix::outer(psi1, psi2)
        + &(&(u * &ComplexMatrix::outer(psi2, psi1).transpose()) * &udag);
    let s = (a * (1.0 - a)).sqrt();
    let expected = BlockView {
        k,
        x11: ComplexMatrix::identity(k).scale_real(1.0 - a),
        x12: m.scale_real(-s),
        x21: m.adjoint().scale_real(-s),
        x22: ComplexMatrix::identity(k).scale_real(a),
    }
    .assemble()
    .scale_real(1.0 / (2 * n) as f64);

    let q = ComplexMatrix::outer(psi1, psi1);
    let qu = &(u * &q.transpose()) * &udag;
    let mmd = &m * &m.adjoint();
    let schur = min_eigenvalue(&(&ComplexMatrix::identity(k) - &mmd))?;
    Ok(ProofResiduals {
        block_form: image.max_abs_diff(&expected),
        mm_dagger: mmd.max_abs_diff(&(&q + &qu)),
        orthogonality: q.trace_product(&qu)?.norm(),
        schur,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis;
    use crate::linalg::kron;
    use crate::maps::{
        canonical_u0, conjugated_phi, phi_u, random_antisymmetric_unitary, reduction_map,
        UnitaryMode,
    };
    use crate::sampling::random_unitary;

    /// (1/2N)·diag((1−a)·1, a·1)
    fn edge_image(n: usize, a: f64) -> ComplexMatrix {
        let p = ComplexMatrix::diagonal(&[C64::new(1.0 - a, 0.0), C64::new(a, 0.0)]);
        kron(&p, &ComplexMatrix::identity(2 * n)).scale_real(1.0 / (2 * n) as f64)
    }

    #[test]
    fn phi_u0_passes() {
        let m = phi_u(1, canonical_u0(1)).unwrap();
        let r = verify_positivity(&m, 1000, 7, 1e-10);
        assert!(r.passed(), "{r}");
        assert!(r.part("proof").unwrap().passed());
    }

    #[test]
    fn random_complex_u_passes_n2() {
        let u = random_antisymmetric_unitary(2, 4, UnitaryMode::ComplexUnitary);
        let r = verify_positivity(&phi_u(2, u).unwrap(), 300, 1, 1e-10);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn edge_cases_a0_a1() {
        for n in [1, 2] {
            let m = phi_u(n, canonical_u0(n)).unwrap();
            let k = 2 * n;
            for (a, idx) in [(0.0, k), (1.0, 0)] {
                let e = basis(2 * k, idx);
                let image = apply_map(&m, &ComplexMatrix::outer(&e, &e)).unwrap();
                assert!(image.max_abs_diff(&edge_image(n, a)) < 1e-15);
            }
        }
    }

    #[test]
    fn contraction_u_still_positive() {
        let u = canonical_u0(1).scale_real(0.6);
        let r = verify_positivity(&phi_u(1, u).unwrap(), 200, 2, 1e-10);
        assert!(r.part("projectors").unwrap().passed());
    }

    #[test]
    fn conjugated_map_passes() {
        let m = conjugated_phi(
            1,
            canonical_u0(1),
            random_unitary(4, 1),
            random_unitary(4, 2),
        )
        .unwrap();
        assert!(verify_positivity(&m, 200, 3, 1e-10).passed());
    }

    #[test]
    fn non_phi_family_is_refused() {
        let r = verify_positivity(&reduction_map(3).unwrap(), 10, 0, 1e-10);
        assert!(!r.passed());
        // the reduction map is positive, so plain sampling passes
        assert!(sample_positivity(&reduction_map(3).unwrap(), 100, 0, 1e-10).passed());
    }
}
