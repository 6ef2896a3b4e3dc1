//! Structural physical approximation of W^U_{4N}, the isotropic detection
//! curve, and the entanglement-breaking certificate built from them.

use super::{detect_matrix, min_eig_report, verify_self_duality, IDENTITY_TOL, POSITIVITY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{
    min_eigenvalue, partial_transpose, realign, trace_norm, ComplexMatrix, Subsystem, C64,
};
use crate::maps::{apply_map, MapDescriptor};
use crate::report::CertReport;
use crate::states::{isotropic_entanglement_threshold, isotropic_matrix};
use crate::witness::{choi, local_frame, Witness};

/// Tolerance on the minimum eigenvalue of W̃ at the closed-form threshold.
const THRESHOLD_EIG_TOL: f64 = 1e-9;
/// Random pairs used by the self-duality part of the EB certificate.
const EB_DUALITY_TRIALS: usize = 50;

fn spa_matrix(w: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::MixingOutOfRange(p));
    }
    let dim = w.square_dim()?;
    Ok(&ComplexMatrix::identity(dim).scale_real(p / dim as f64) + &w.scale_real(1.0 - p))
}

/// W̃ = (p/d²)·1 ⊗ 1 + (1 − p)·W.
pub fn spa_witness(w: &Witness, p: f64) -> Result<ComplexMatrix> {
    spa_matrix(w.matrix(), p)
}

/// Smallest p with W̃ ≥ 0 for W^U_{4N}: 4N/(4N + 1).
pub fn spa_threshold_closed_form(n: usize) -> f64 {
    let d = 4.0 * n as f64;
    d / (d + 1.0)
}

/// Bisects [0, 1] for the smallest p with min-eig(W̃) ≥ −tol, to a bracket of
/// width tol/10. Fails with `NonBracketing` when W itself is already
/// positive or W̃(1) is not.
pub fn spa_threshold_bisect(w: &Witness, tol: f64) -> Result<f64> {
    bisect_matrix(w.matrix(), tol)
}

fn bisect_matrix(w: &ComplexMatrix, tol: f64) -> Result<f64> {
    let f = |p: f64| -> Result<f64> { min_eigenvalue(&spa_matrix(w, p)?) };
    if f(0.0)? >= -tol || f(1.0)? < -tol {
        return Err(Error::NonBracketing);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 0.1 * tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? >= -tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Tr(W^U_{4N}·ρ_λ) = (1/4N)(λ/4N + λ − 1).
pub fn isotropic_detection_value(n: usize, lambda: f64) -> f64 {
    let d = 4.0 * n as f64;
    (lambda / d + lambda - 1.0) / d
}

/// Zero of the (affine) detection curve, from its values at λ = 0 and 1.
pub fn detection_root(n: usize) -> f64 {
    let f0 = isotropic_detection_value(n, 0.0);
    let f1 = isotropic_detection_value(n, 1.0);
    -f0 / (f1 - f0)
}

/// Σ_{k,l} ⟨k|Λ(|k⟩⟨l|)|l⟩ = d²·Tr(W·P⁺_d); equals −4N for Φ^U with unitary U.
pub fn choi_overlap_sum(m: &MapDescriptor) -> Result<C64> {
    let d = m.dim();
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..d {
        for l in 0..d {
            acc += apply_map(m, &ComplexMatrix::unit(d, k, l))?[(k, l)];
        }
    }
    Ok(acc)
}

fn witness_n(w: &Witness) -> Result<usize> {
    w.n()
        .ok_or_else(|| Error::WitnessMismatch(format!("no SPA threshold for {}", w.family())))
}

/// Parts: `bisection` (numerical threshold within `tol` of 4N/(4N+1)),
/// `min_eig_at_threshold` (0 within 1e-9) and `minimality` (W̃ is not
/// positive slightly below the threshold).
pub fn verify_spa_threshold(w: &Witness, tol: f64) -> CertReport {
    const NAME: &str = "spa-threshold";
    let run = || -> Result<CertReport> {
        let n = witness_n(w)?;
        let closed = spa_threshold_closed_form(n);
        let bisect = match spa_threshold_bisect(w, 0.01 * tol) {
            Ok(p) => CertReport::compare("bisection", p, closed, tol),
            Err(e) => CertReport::error("bisection", e),
        };
        let at = min_eigenvalue(&spa_witness(w, closed)?)?;
        let below = min_eigenvalue(&spa_witness(w, closed - 1e-3)?)?;
        let parts = vec![
            bisect,
            CertReport::compare("min_eig_at_threshold", at, 0.0, THRESHOLD_EIG_TOL),
            CertReport::rule(
                "minimality",
                below,
                POSITIVITY_TOL,
                below < -POSITIVITY_TOL,
                "min eigenvalue at p = threshold - 1e-3 is negative",
            ),
        ];
        let headline = parts[0].measured;
        Ok(CertReport::composite(NAME, headline, parts))
    };
    run().unwrap_or_else(|e| CertReport::error(NAME, e))
}

/// Entanglement-breaking certificate for the SPA of Φ^U (or its conjugated
/// variant) at p = 4N/(4N+1).
///
/// Sufficient criterion: the base map is unital and self-dual, and its
/// witness detects every entangled isotropic state, i.e. the root of the
/// detection curve equals the isotropic entanglement threshold (within
/// 1e-10); the numeric Tr(W·ρ_λ) at the root is cross-checked against 0. For
/// the conjugated map, its SPA Choi matrix must be the local-unitary
/// conjugate of the base one. Corroboration on the SPA Choi matrix of `m`:
/// PPT (min eig ≥ −1e-10) and realignment (trace norm ≤ 1 + tol).
pub fn verify_eb_certificate(m: &MapDescriptor, tol: f64) -> CertReport {
    const NAME: &str = "eb-certificate";
    let run = || -> Result<CertReport> {
        let base = m.base_phi().ok_or_else(|| {
            Error::WitnessMismatch(format!("no EB certificate for {}", m.family()))
        })?;
        let n = base.size_param();
        let d = base.dim();
        let p = spa_threshold_closed_form(n);
        let base_w = choi(&base)?;
        let w = if m.family() == base.family() {
            base_w.clone()
        } else {
            choi(m)?
        };

        let id = ComplexMatrix::identity(d);
        let unital = apply_map(&base, &id)?.max_abs_diff(&id);
        let root = detection_root(n);
        let at_root = detect_matrix(base_w.matrix(), &isotropic_matrix(d, root))?;
        let mut parts = vec![
            CertReport::rule(
                "unital",
                unital,
                IDENTITY_TOL,
                unital <= IDENTITY_TOL,
                "max |Phi(1) - 1|",
            ),
            verify_self_duality(&base, EB_DUALITY_TRIALS, 0, POSITIVITY_TOL),
            CertReport::compare(
                "detection_root",
                root,
                isotropic_entanglement_threshold(n),
                1e-10,
            ),
            CertReport::compare("curve_crosscheck", at_root, 0.0, IDENTITY_TOL)
                .with_details("numeric Tr(W rho_lambda) at the root"),
        ];

        let spa = spa_witness(&w, p)?;
        if let (Some(v1), Some(v2)) = (m.v1(), m.v2()) {
            let expected = spa_witness(&base_w, p)?.conjugate_by(&local_frame(v1, v2))?;
            let residual = spa.max_abs_diff(&expected);
            parts.push(CertReport::rule(
                "local_unitary_equivalence",
                residual,
                IDENTITY_TOL,
                residual <= IDENTITY_TOL,
                "SPA Choi matrix equals (V2^T x V1^dagger) SPA(W) (V2^T x V1^dagger)^dagger",
            ));
        }
        parts.push(min_eig_report(
            "spa_ppt",
            &partial_transpose(&spa, d, d, Subsystem::B)?,
            POSITIVITY_TOL,
        ));
        let realigned = trace_norm(&realign(&spa, d)?)?;
        parts.push(CertReport::rule(
            "spa_realignment",
            realigned,
            tol,
            realigned <= 1.0 + tol,
            "trace norm of the realigned SPA Choi matrix <= 1 + tol",
        ));
        Ok(CertReport::composite(NAME, realigned, parts))
    };
    run().unwrap_or_else(|e| CertReport::error(NAME, e))
}
