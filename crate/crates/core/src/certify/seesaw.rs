//! See-saw search for min ⟨ψ⊗φ|W|ψ⊗φ⟩ over unit product vectors.
//!
//! With φ fixed the optimal ψ is the lowest eigenvector of (1⊗⟨φ|)W(1⊗|φ⟩),
//! and vice versa; alternating never increases the value. The result is an
//! upper bound on the true minimum, so a negative value is a certificate that
//! W is not block-positive while a value near 0 is only evidence.

use crate::error::Result;
use crate::linalg::{contract_factor, hermitian_eig, kron_vec, ComplexMatrix, Subsystem, C64};
use crate::sampling::{self, random_unit_vector};
use crate::witness::Witness;

const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-15;

fn lowest(m: &ComplexMatrix) -> Result<(f64, Vec<C64>)> {
    let (spec, vecs) = hermitian_eig(m, 1e-9 * m.max_abs().max(1.0))?;
    Ok((spec.min(), vecs.column(0)))
}

/// Smallest product expectation found from `restarts` seeded random starts
/// on C^da ⊗ C^db, returned with the minimizing product vector.
pub fn seesaw_minimum(
    m: &ComplexMatrix,
    da: usize,
    db: usize,
    restarts: usize,
    seed: u64,
) -> Result<(f64, Vec<C64>)> {
    let mut rng = sampling::rng(seed);
    let mut best = (f64::INFINITY, Vec::new());
    for _ in 0..restarts {
        let mut phi = random_unit_vector(&mut rng, db);
        let mut psi = Vec::new();
        let mut value = f64::INFINITY;
        for _ in 0..MAX_ITERATIONS {
            let (_, a) = lowest(&contract_factor(m, da, db, Subsystem::B, &phi)?)?;
            psi = a;
            let (v, b) = lowest(&contract_factor(m, da, db, Subsystem::A, &psi)?)?;
            phi = b;
            let step = value - v;
            value = v;
            if step.abs() <= STEP_TOL {
                break;
            }
        }
        if value < best.0 {
            best = (value, kron_vec(&psi, &phi));
        }
    }
    Ok(best)
}

/// [`seesaw_minimum`] on a witness, value only.
pub fn block_positivity_seesaw(w: &Witness, restarts: usize, seed: u64) -> Result<f64> {
    seesaw_minimum(w.matrix(), w.d(), w.d(), restarts, seed).map(|(v, _)| v)
}
