//! Nondecomposability of W^U_{4N}: the explicit PPT state it detects.

use super::{detect_matrix, min_eig_report, IDENTITY_TOL, POSITIVITY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{partial_transpose, ComplexMatrix, Subsystem};
use crate::maps::{phi_u, Family};
use crate::report::CertReport;
use crate::states::{ppt_entangled_matrix, ppt_normalization};
use crate::witness::{choi, local_frame, Witness};

const NAME: &str = "nondecomposability";

/// Tr(W·ρ) for the state of [`crate::states::ppt_entangled_state`]: −𝒩/(2N).
///
/// Block by block, the diagonal blocks contribute 𝒩, the (i, i+2N) blocks
/// −𝒩/N and the matrix-unit blocks −𝒩(2N−1)/(2N).
pub fn nondecomposability_expected_value(n: usize) -> f64 {
    -ppt_normalization(n) / (2.0 * n as f64)
}

/// Builds W^U_{4N} and certifies it with [`verify_witness_nondecomposability`].
pub fn verify_nondecomposability(n: usize, u: &ComplexMatrix, tol: f64) -> CertReport {
    match phi_u(n, u.clone()).and_then(|m| choi(&m)) {
        Ok(w) => verify_witness_nondecomposability(&w, tol),
        Err(e) => CertReport::error(NAME, e),
    }
}

/// Parts: `psd` and `ppt` (min eigenvalues of ρ and ρ^Γ ≥ −1e-10), `trace`
/// (Tr ρ = 1), `detection_value` (Tr(Wρ) = −𝒩/(2N) within `tol`) and
/// `detection_bound` (Tr(Wρ) ≤ −𝒩/(8N²) + 1e-12).
///
/// For the conjugated witness (V̄2†⊗V1†)W(V̄2⊗V1) the state is conjugated by
/// the same local unitary, which keeps it PPT and leaves Tr(Wρ) unchanged.
pub fn verify_witness_nondecomposability(w: &Witness, tol: f64) -> CertReport {
    match state_for(w) {
        Ok((n, rho)) => certify_state(w, n, &rho, tol),
        Err(e) => CertReport::error(NAME, e),
    }
}

fn state_for(w: &Witness) -> Result<(usize, ComplexMatrix)> {
    let src = w.source();
    let base = src
        .base_phi()
        .ok_or_else(|| Error::WitnessMismatch(format!("no PPT state for {}", src.family())))?;
    let n = base.size_param();
    let base_w = if src.family() == Family::PhiU4N {
        w.clone()
    } else {
        choi(&base)?
    };
    let rho = ppt_entangled_matrix(n, &base_w)?;
    match (src.v1(), src.v2()) {
        (Some(v1), Some(v2)) => Ok((n, rho.conjugate_by(&local_frame(v1, v2))?)),
        _ => Ok((n, rho)),
    }
}

fn certify_state(w: &Witness, n: usize, rho: &ComplexMatrix, tol: f64) -> CertReport {
    let d = w.d();
    let pt = match partial_transpose(rho, d, d, Subsystem::B) {
        Ok(m) => m,
        Err(e) => return CertReport::error(NAME, e),
    };
    let value = match detect_matrix(w.matrix(), rho) {
        Ok(v) => v,
        Err(e) => return CertReport::error(NAME, e),
    };
    let nf = n as f64;
    let bound = -ppt_normalization(n) / (8.0 * nf * nf);
    let parts = vec![
        min_eig_report("psd", rho, POSITIVITY_TOL),
        min_eig_report("ppt", &pt, POSITIVITY_TOL),
        CertReport::compare("trace", rho.trace(), 1.0, IDENTITY_TOL),
        CertReport::compare(
            "detection_value",
            value,
            nondecomposability_expected_value(n),
            tol,
        ),
        CertReport::rule(
            "detection_bound",
            value,
            IDENTITY_TOL,
            value <= bound + IDENTITY_TOL,
            format!("Tr(W rho) <= -norm/(8N^2) = {bound:.6e}"),
        ),
    ];
    CertReport::composite(NAME, value, parts)
}
