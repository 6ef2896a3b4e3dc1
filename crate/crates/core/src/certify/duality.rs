//! Self-duality Tr(X·Φ(Y)) = Tr(Φ(X)·Y) on random Hermitian pairs.

use serde::{Deserialize, Serialize};

use super::IDENTITY_TOL;
use crate::error::Result;
use crate::linalg::{BlockView, ComplexMatrix, C64};
use crate::maps::{apply_map, conjugated_phi, Family, MapDescriptor};
use crate::report::CertReport;
use crate::sampling::{self, random_hermitian};

/// The decomposition Tr(X·Φ^U(Y)) = a − b and Tr(Φ^U(X)·Y) = a − b′ with
///
/// a = (1/2N)[Tr X11·Tr Y22 + Tr X22·Tr Y11 − Tr(X12 Y21) − Tr(X21 Y12)],
/// b = (1/2N) Tr[X12 U Y12ᵀ U† + X21 U Y21ᵀ U†],
/// b′ = (1/2N) Tr[U X12ᵀ U† Y12 + U X21ᵀ U† Y21].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityTerms {
    pub a: C64,
    pub b: C64,
    pub b_prime: C64,
}

pub fn duality_terms(
    u: &ComplexMatrix,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
) -> Result<DualityTerms> {
    let k = u.square_dim()?;
    let bx = BlockView::split(x, k)?;
    let by = BlockView::split(y, k)?;
    let ud = u.adjoint();
    let tw = |m: &ComplexMatrix| &(u * &m.transpose()) * &ud;
    let norm = 1.0 / k as f64;
    let a = bx.x11.trace() * by.x22.trace() + bx.x22.trace() * by.x11.trace()
        - bx.x12.trace_product(&by.x21)?
        - bx.x21.trace_product(&by.x12)?;
    let b = bx.x12.trace_product(&tw(&by.x12))? + bx.x21.trace_product(&tw(&by.x21))?;
    let b_prime = tw(&bx.x12).trace_product(&by.x12)? + tw(&bx.x21).trace_product(&by.x21)?;
    Ok(DualityTerms {
        a: a * norm,
        b: b * norm,
        b_prime: b_prime * norm,
    })
}

/// max over `trials` random Hermitian pairs of |Tr(X·f(Y)) − Tr(g(X)·Y)|.
fn two_sided(f: &MapDescriptor, g: &MapDescriptor, trials: usize, seed: u64) -> Result<f64> {
    let d = f.dim();
    let mut rng = sampling::rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_hermitian(&mut rng, d);
        let y = random_hermitian(&mut rng, d);
        let lhs = x.trace_product(&apply_map(f, &y)?)?;
        let rhs = apply_map(g, &x)?.trace_product(&y)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

fn residual_report(name: &str, residual: Result<f64>, tol: f64, details: &str) -> CertReport {
    match residual {
        Ok(r) => CertReport::rule(name, r, tol, r <= tol, details),
        Err(e) => CertReport::error(name, e),
    }
}

fn phi_terms(m: &MapDescriptor, trials: usize, seed: u64, tol: f64) -> CertReport {
    let run = || -> Result<f64> {
        let u = m.u().expect("Phi^U carries U");
        let d = m.dim();
        let mut rng = sampling::rng(seed);
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let x = random_hermitian(&mut rng, d);
            let y = random_hermitian(&mut rng, d);
            let t = duality_terms(u, &x, &y)?;
            let lhs = x.trace_product(&apply_map(m, &y)?)?;
            let rhs = apply_map(m, &x)?.trace_product(&y)?;
            worst = worst
                .max((lhs - (t.a - t.b)).norm())
                .max((rhs - (t.a - t.b_prime)).norm())
                .max((t.b - t.b_prime).norm());
        }
        Ok(worst)
    };
    residual_report(
        "terms",
        run(),
        tol,
        "max of |Tr(X Phi(Y)) - (a - b)|, |Tr(Phi(X) Y) - (a - b')|, |b - b'|",
    )
}

fn unit_pair(m: &MapDescriptor) -> CertReport {
    let d = m.dim();
    let id = ComplexMatrix::identity(d);
    match apply_map(m, &id) {
        Ok(img) => CertReport::compare("identity_pair", img.trace(), d as f64, IDENTITY_TOL)
            .with_details("X = Y = 1: both sides equal d"),
        Err(e) => CertReport::error("identity_pair", e),
    }
}

/// Self-duality over `trials` seeded random Hermitian pairs.
///
/// For Φ^U the report also checks the a, b, b′ decomposition and b = b′. For
/// the conjugated map X ↦ V1†Φ^U(V2 X V2†)V1, which is self-dual only when
/// V1 = V2, it checks Φ^U itself and that the dual is the conjugation with
/// V1 and V2 exchanged. Other families get the plain two-sided check.
pub fn verify_self_duality(m: &MapDescriptor, trials: usize, seed: u64, tol: f64) -> CertReport {
    const NAME: &str = "self-duality";
    const TWO_SIDED: &str = "max |Tr(X Phi(Y)) - Tr(Phi(X) Y)| over random Hermitian pairs";
    let parts = match m.family() {
        Family::PhiU4N => vec![
            residual_report("two_sided", two_sided(m, m, trials, seed), tol, TWO_SIDED),
            phi_terms(m, trials, seed, tol),
            unit_pair(m),
        ],
        Family::ConjugatedPhiU => {
            let base = m.base_phi().expect("conjugated map has a base");
            let swapped = conjugated_phi(
                m.size_param(),
                base.u().expect("Phi^U carries U").clone(),
                m.v2().expect("V2").clone(),
                m.v1().expect("V1").clone(),
            );
            let dual = match swapped {
                Ok(s) => residual_report(
                    "dual_is_swapped_conjugation",
                    two_sided(m, &s, trials, seed),
                    tol,
                    "max |Tr(X Phi'(Y)) - Tr(Phi''(X) Y)|, Phi'' with V1 and V2 exchanged",
                ),
                Err(e) => CertReport::error("dual_is_swapped_conjugation", e),
            };
            vec![
                residual_report(
                    "base_two_sided",
                    two_sided(&base, &base, trials, seed),
                    tol,
                    TWO_SIDED,
                ),
                phi_terms(&base, trials, seed, tol),
                dual,
            ]
        }
        _ => vec![residual_report(
            "two_sided",
            two_sided(m, m, trials, seed),
            tol,
            TWO_SIDED,
        )],
    };
    let headline = parts[0].measured;
    CertReport::composite(NAME, headline, parts)
}
