//! Choi matrices of the maps and the identities they satisfy.
//!
//! The Choi matrix of Λ on M_d is W = (1 ⊗ Λ)P⁺_d
//! = (1/d) Σ_{k,l} |k⟩⟨l| ⊗ Λ(|k⟩⟨l|), so Tr W = 1 for trace-preserving Λ.
//! The first tensor factor is the reference copy; row (k, a) ↦ k·d + a.

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, kron, partial_transpose, ComplexMatrix, Subsystem, C64};
use crate::maps::{apply_map, conjugated_phi, validate_u, Family, MapDescriptor};
use crate::report::CertReport;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    matrix: ComplexMatrix,
    d: usize,
    source: MapDescriptor,
}

impl Witness {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Local dimension; the matrix is d²×d².
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn source(&self) -> &MapDescriptor {
        &self.source
    }

    pub fn family(&self) -> Family {
        self.source.family()
    }

    /// N for Φ^U-based witnesses.
    pub fn n(&self) -> Option<usize> {
        match self.source.family() {
            Family::PhiU4N | Family::ConjugatedPhiU => Some(self.source.size_param()),
            _ => None,
        }
    }

    /// W^Γ, partial transpose on the second (output) factor.
    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose(&self.matrix, self.d, self.d, Subsystem::B)
            .expect("witness matrix is d^2 x d^2")
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

/// P⁺_d = (1/d) Σ_{k,l} |k⟩⟨l| ⊗ |k⟩⟨l|.
pub fn max_entangled(d: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(d * d, d * d);
    let w = C64::new(1.0 / d as f64, 0.0);
    for k in 0..d {
        for l in 0..d {
            p[(k * d + k, l * d + l)] = w;
        }
    }
    p
}

pub fn choi(m: &MapDescriptor) -> Result<Witness> {
    let d = m.dim();
    let mut w = ComplexMatrix::zeros(d * d, d * d);
    let scale = 1.0 / d as f64;
    for k in 0..d {
        for l in 0..d {
            let image = apply_map(m, &ComplexMatrix::unit(d, k, l))?;
            w.set_submatrix(k * d, l * d, &image.scale_real(scale));
        }
    }
    Ok(Witness {
        matrix: w,
        d,
        source: m.clone(),
    })
}

/// (value, multiplicity) pairs of the spectrum of W^U_{4N} for unitary U,
/// ascending: −1/(4N) once, 0 (12N² − 2)-fold, 1/(4N²) 4N²-fold, 1/(4N) once.
/// For N = 1 the last two values coincide at 1/4.
pub fn expected_spectrum(n: usize) -> Vec<(f64, usize)> {
    let nf = n as f64;
    vec![
        (-1.0 / (4.0 * nf), 1),
        (0.0, 12 * n * n - 2),
        (1.0 / (4.0 * nf * nf), 4 * n * n),
        (1.0 / (4.0 * nf), 1),
    ]
}

fn expanded_expected(n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = expected_spectrum(n)
        .into_iter()
        .flat_map(|(v, m)| std::iter::repeat_n(v, m))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Compares the sorted eigenvalues of `w` with [`expected_spectrum`] pairwise.
pub fn verify_spectrum(w: &Witness, n: usize, tol: f64) -> CertReport {
    const NAME: &str = "spectrum";
    if w.n() != Some(n) || !w.source().has_unitary_u() {
        return CertReport::rule(
            NAME,
            f64::NAN,
            tol,
            false,
            format!("witness is not built from Phi^U_{{4N}} with unitary U and N = {n}"),
        );
    }
    let spec = match eigenvalues(w.matrix(), tol) {
        Ok(s) => s,
        Err(e) => return CertReport::error(NAME, e),
    };
    let expected = expanded_expected(n);
    let deviation = spec
        .eigenvalues
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let ok = spec.len() == expected.len() && deviation <= tol;
    CertReport::rule(
        NAME,
        deviation,
        tol,
        ok,
        format!(
            "max pairwise deviation of {} sorted eigenvalues from the closed form (min {:.6e}, trace {:.6e})",
            spec.len(),
            spec.min(),
            spec.sum()
        ),
    )
}

/// V = 1₂ ⊗ U†, the unitary with (W^U)^Γ = (1 ⊗ V) W^U (1 ⊗ V)†.
///
/// For Hermitian U (U0 and every real-orthogonal V·U0·Vᵀ) this is the same
/// as |1⟩⟨1| ⊗ U† + |2⟩⟨2| ⊗ U; for a general antisymmetric unitary U only
/// the form with U† in both blocks satisfies the identity.
pub fn gamma_unitary(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = u.square_dim()?;
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::InvalidU(format!(
            "expected even dimension, got {dim}"
        )));
    }
    validate_u(u, dim, true)?;
    Ok(kron(&ComplexMatrix::identity(2), &u.adjoint()))
}

/// Unitary T on the output factor with W^Γ = (1 ⊗ T) W (1 ⊗ T)† for
/// witnesses of Φ^U and of its conjugated variant (T = V1ᵀ·V·V1).
pub fn gamma_unitary_for(w: &Witness) -> Result<ComplexMatrix> {
    let src = w.source();
    let u = src
        .u()
        .ok_or_else(|| Error::WitnessMismatch(format!("{} has no U parameter", src.family())))?;
    let g = gamma_unitary(u)?;
    match src.family() {
        Family::PhiU4N => Ok(g),
        Family::ConjugatedPhiU => {
            let v1 = src.v1().expect("conjugated map carries V1");
            Ok(&(&v1.transpose() * &g) * v1)
        }
        other => Err(Error::WitnessMismatch(format!(
            "no partial-transpose unitary for {other}"
        ))),
    }
}

/// W^{U,V1,V2} = (V̄2† ⊗ V1†) W^U (V̄2 ⊗ V1).
pub fn transform_witness(w: &Witness, v1: &ComplexMatrix, v2: &ComplexMatrix) -> Result<Witness> {
    let src = w.source();
    if src.family() != Family::PhiU4N {
        return Err(Error::WitnessMismatch(format!(
            "transform_witness expects a Phi^U witness, got {}",
            src.family()
        )));
    }
    let n = src.size_param();
    let u = src.u().expect("PhiU4N carries U").clone();
    let conj_map = conjugated_phi(n, u, v1.clone(), v2.clone())?;
    let local = local_frame(v1, v2);
    Ok(Witness {
        matrix: w.matrix().conjugate_by(&local)?,
        d: w.d(),
        source: conj_map,
    })
}

/// V̄2† ⊗ V1† = V2ᵀ ⊗ V1†.
pub fn local_frame(v1: &ComplexMatrix, v2: &ComplexMatrix) -> ComplexMatrix {
    kron(&v2.transpose(), &v1.adjoint())
}
