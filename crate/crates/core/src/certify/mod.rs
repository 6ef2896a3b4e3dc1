//! Numerical certificates for the maps and witnesses.
//!
//! Each `verify_*` function returns a [`CertReport`]; a failed check is a
//! failing report, never an error. The `tol` argument of each function is the
//! headline threshold of that check; secondary identities use the fixed
//! constants below.

mod duality;
mod nondecomposability;
mod optimality;
mod positivity;
mod seesaw;
mod spa;
mod suite;

pub use duality::{duality_terms, verify_self_duality, DualityTerms};
pub use nondecomposability::{
    nondecomposability_expected_value, verify_nondecomposability, verify_witness_nondecomposability,
};
pub use optimality::{spanning_family, verify_nd_optimality, verify_optimality, SpanningFamily};
pub use positivity::{sample_positivity, verify_positivity, verify_positivity_with};
pub use seesaw::{block_positivity_seesaw, seesaw_minimum};
pub use spa::{
    choi_overlap_sum, detection_root, isotropic_detection_value, spa_threshold_bisect,
    spa_threshold_closed_form, spa_witness, verify_eb_certificate, verify_spa_threshold,
};
pub use suite::{run_suite, SuiteConfig, SuiteReport, Tolerances, CHECK_NAMES};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::report::CertReport;
use crate::states::DensityOperator;
use crate::witness::Witness;

/// Floor for minimum eigenvalues that should be ≥ 0.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Tolerance for exact algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Relative cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-6;

/// Tr(W·ρ). Fails if the trace has an imaginary part above 1e-12.
pub fn detect(w: &Witness, s: &DensityOperator) -> Result<f64> {
    detect_matrix(w.matrix(), s.matrix())
}

/// [`detect`] on bare matrices.
pub fn detect_matrix(w: &ComplexMatrix, rho: &ComplexMatrix) -> Result<f64> {
    let t = w.trace_product(rho)?;
    if t.im.abs() > IDENTITY_TOL {
        return Err(Error::NonRealTrace(t.im));
    }
    Ok(t.re)
}

fn min_eig_report(name: &str, m: &ComplexMatrix, floor: f64) -> CertReport {
    match crate::linalg::min_eigenvalue(m) {
        Ok(x) => CertReport::rule(name, x, floor, x >= -floor, "min eigenvalue >= -tol"),
        Err(e) => CertReport::error(name, e),
    }
}
