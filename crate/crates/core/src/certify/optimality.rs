//! Optimality: (4N)² product vectors with zero expectation that span
//! C^{4N} ⊗ C^{4N}, for W, for W^Γ and for conjugated witnesses.

use super::{IDENTITY_TOL, RANK_TOL};
use crate::error::{Error, Result};
use crate::linalg::{kron, kron_vec, numerical_rank, ComplexMatrix, C64, I, ONE};
use crate::report::CertReport;
use crate::witness::{gamma_unitary_for, local_frame, Witness};

#[derive(Debug, Clone, PartialEq)]
pub struct SpanningFamily {
    pub n: usize,
    /// ψ_α: e_l, then f_mn = e_m + e_n and g_mn = e_m + i·e_n for m < n.
    pub generators: Vec<Vec<C64>>,
    /// ψ_α ⊗ ψ_α*.
    pub vectors: Vec<Vec<C64>>,
}

impl SpanningFamily {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The family mapped by a unitary on the composite space.
    pub fn transformed(&self, frame: &ComplexMatrix) -> Result<Vec<Vec<C64>>> {
        self.vectors.iter().map(|v| frame.apply(v)).collect()
    }
}

pub fn spanning_family(n: usize) -> SpanningFamily {
    let d = 4 * n;
    let e = |l: usize, z: C64| {
        let mut v = vec![C64::new(0.0, 0.0); d];
        v[l] = z;
        v
    };
    let mut generators: Vec<Vec<C64>> = (0..d).map(|l| e(l, ONE)).collect();
    for m in 0..d {
        for k in (m + 1)..d {
            let mut f = e(m, ONE);
            f[k] = ONE;
            let mut g = e(m, ONE);
            g[k] = I;
            generators.push(f);
            generators.push(g);
        }
    }
    let vectors = generators
        .iter()
        .map(|psi| {
            let conj: Vec<C64> = psi.iter().map(|z| z.conj()).collect();
            kron_vec(psi, &conj)
        })
        .collect();
    SpanningFamily {
        n,
        generators,
        vectors,
    }
}

/// Unitary carrying ψ⊗ψ* to the zero-expectation vectors of `w`.
fn witness_frame(w: &Witness) -> ComplexMatrix {
    match (w.source().v1(), w.source().v2()) {
        (Some(v1), Some(v2)) => local_frame(v1, v2),
        _ => ComplexMatrix::identity(w.d() * w.d()),
    }
}

fn family_for(w: &Witness) -> Result<SpanningFamily> {
    w.n()
        .map(spanning_family)
        .ok_or_else(|| Error::WitnessMismatch(format!("no spanning family for {}", w.family())))
}

/// Parts `expectations` (max |⟨v|M|v⟩| over the family ≤ tol) and `rank`
/// (numerical rank of the family = d²).
fn optimality_parts(
    m: &ComplexMatrix,
    vectors: &[Vec<C64>],
    dim: usize,
    tol: f64,
) -> Vec<CertReport> {
    let mut worst = 0.0f64;
    for v in vectors {
        match m.expectation(v) {
            Ok(z) => worst = worst.max(z.norm()),
            Err(e) => return vec![CertReport::error("expectations", e)],
        }
    }
    let expectations = CertReport::rule(
        "expectations",
        worst,
        tol,
        worst <= tol,
        format!(
            "max |<v|W|v>| over {} product vectors <= tol",
            vectors.len()
        ),
    );
    let rank = match numerical_rank(vectors, RANK_TOL) {
        Ok(r) => CertReport::compare("rank", r as f64, dim as f64, 0.0)
            .with_details(format!("relative singular-value cutoff {RANK_TOL:e}")),
        Err(e) => CertReport::error("rank", e),
    };
    vec![expectations, rank]
}

/// Optimality of a Φ^U witness or of its conjugated variant, using the
/// family ψ⊗ψ* mapped by (V̄2†⊗V1†) in the conjugated case.
pub fn verify_optimality(w: &Witness, tol: f64) -> CertReport {
    const NAME: &str = "optimality";
    let run = || -> Result<CertReport> {
        let fam = family_for(w)?;
        let vectors = fam.transformed(&witness_frame(w))?;
        let parts = optimality_parts(w.matrix(), &vectors, w.d() * w.d(), tol);
        let headline = parts[0].measured;
        Ok(CertReport::composite(NAME, headline, parts))
    };
    run().unwrap_or_else(|e| CertReport::error(NAME, e))
}

/// nd-optimality: checks W^Γ = (1⊗T)W(1⊗T)† for the unitary T of
/// [`gamma_unitary_for`], then runs the optimality test on W^Γ itself with
/// the family (1⊗T)·(frame of W)·(ψ⊗ψ*).
pub fn verify_nd_optimality(w: &Witness, tol: f64) -> CertReport {
    const NAME: &str = "nd-optimality";
    let run = || -> Result<CertReport> {
        let fam = family_for(w)?;
        let d = w.d();
        let t = kron(&ComplexMatrix::identity(d), &gamma_unitary_for(w)?);
        let wg = w.partial_transpose();
        let residual = wg.max_abs_diff(&w.matrix().conjugate_by(&t)?);
        let frame = &t * &witness_frame(w);
        let vectors = fam.transformed(&frame)?;
        let mut parts = vec![CertReport::rule(
            "gamma_identity",
            residual,
            IDENTITY_TOL,
            residual <= IDENTITY_TOL,
            "max |W^Gamma - (1 x V) W (1 x V)^dagger| <= tol",
        )];
        parts.extend(optimality_parts(&wg, &vectors, d * d, tol));
        let headline = parts[1].measured;
        Ok(CertReport::composite(NAME, headline, parts))
    };
    run().unwrap_or_else(|e| CertReport::error(NAME, e))
}
