//! Parsing and resolution of `--u`, `--v1`, `--v2` and `--tol` arguments.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use robertson_core::maps::{canonical_u0, random_antisymmetric_unitary, validate_u};
use robertson_core::sampling::random_unitary;
use robertson_core::{ComplexMatrix, UnitaryMode};

use crate::matrix_io::read_matrix;

/// Tolerance for accepting a V matrix read from file as unitary.
const UNITARY_TOL: f64 = 1e-12;

/// Source of the antisymmetric unitary U.
#[derive(Debug, Clone, PartialEq)]
pub enum USpec {
    Canonical,
    /// V·U0·Vᵀ with V real orthogonal.
    Seed(u64),
    /// V·U0·Vᵀ with V complex unitary.
    ComplexSeed(u64),
    File(PathBuf),
}

impl FromStr for USpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "canonical" => Ok(USpec::Canonical),
            Some(("seed", k)) => parse_seed(k).map(USpec::Seed),
            Some(("cseed", k)) => parse_seed(k).map(USpec::ComplexSeed),
            Some(("file", p)) if !p.is_empty() => Ok(USpec::File(p.into())),
            _ => Err(format!(
                "'{s}' is not one of canonical, seed:<k>, cseed:<k>, file:<path>"
            )),
        }
    }
}

impl USpec {
    /// The 2N×2N matrix U, checked for antisymmetry and UU† ≤ 1.
    pub fn resolve(&self, n: usize) -> Result<ComplexMatrix> {
        let u = match self {
            USpec::Canonical => canonical_u0(n),
            USpec::Seed(k) => random_antisymmetric_unitary(n, *k, UnitaryMode::RealOrthogonal),
            USpec::ComplexSeed(k) => {
                random_antisymmetric_unitary(n, *k, UnitaryMode::ComplexUnitary)
            }
            USpec::File(p) => read_matrix(p)?,
        };
        validate_u(&u, 2 * n, false).context("invalid U")?;
        Ok(u)
    }
}

/// Source of a local unitary V1 or V2.
#[derive(Debug, Clone, PartialEq)]
pub enum VSpec {
    Identity,
    Seed(u64),
    File(PathBuf),
}

impl FromStr for VSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            None if s == "identity" => Ok(VSpec::Identity),
            Some(("seed", k)) => parse_seed(k).map(VSpec::Seed),
            Some(("file", p)) if !p.is_empty() => Ok(VSpec::File(p.into())),
            _ => Err(format!(
                "'{s}' is not one of identity, seed:<k>, file:<path>"
            )),
        }
    }
}

impl VSpec {
    /// The 4N×4N unitary V.
    pub fn resolve(&self, n: usize) -> Result<ComplexMatrix> {
        let d = 4 * n;
        let v = match self {
            VSpec::Identity => return Ok(ComplexMatrix::identity(d)),
            VSpec::Seed(k) => return Ok(random_unitary(d, *k)),
            VSpec::File(p) => read_matrix(p)?,
        };
        if v.dim() != (d, d) {
            bail!("V must be {d}x{d}, got {}x{}", v.rows(), v.cols());
        }
        let defect = v.unitarity_defect();
        if defect > UNITARY_TOL {
            bail!("V is not unitary (max |VV^dagger - I| = {defect:e})");
        }
        Ok(v)
    }
}

/// One `--tol check=value` override.
#[derive(Debug, Clone, PartialEq)]
pub struct TolOverride {
    pub check: String,
    pub value: f64,
}

impl FromStr for TolOverride {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (check, value) = s
            .split_once('=')
            .ok_or_else(|| format!("'{s}' is not of the form <check>=<value>"))?;
        let value = value
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad tolerance '{value}': {e}"))?;
        Ok(TolOverride {
            check: check.trim().to_string(),
            value,
        })
    }
}

fn parse_seed(k: &str) -> Result<u64, String> {
    k.parse().map_err(|e| format!("bad seed '{k}': {e}"))
}
