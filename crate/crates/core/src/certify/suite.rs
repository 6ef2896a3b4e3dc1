//! The full certification run for one Φ^U (or conjugated Φ^U).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    verify_eb_certificate, verify_nd_optimality, verify_optimality, verify_positivity,
    verify_self_duality, verify_spa_threshold, verify_witness_nondecomposability,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::maps::{conjugated_phi, phi_u, MapDescriptor};
use crate::report::{CertReport, Verdict};
use crate::witness::{choi, verify_spectrum};

/// Check names in the order they run.
pub const CHECK_NAMES: [&str; 8] = [
    "positivity",
    "spectrum",
    "nondecomposability",
    "optimality",
    "nd-optimality",
    "self-duality",
    "spa-threshold",
    "eb-certificate",
];

/// Headline tolerance per check, keyed by the names in [`CHECK_NAMES`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        let defaults = [1e-10, 1e-9, 1e-12, 1e-10, 1e-10, 1e-10, 1e-8, 1e-8];
        Tolerances(
            CHECK_NAMES
                .iter()
                .zip(defaults)
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )
    }
}

impl Tolerances {
    pub fn get(&self, check: &str) -> f64 {
        self.0[check]
    }

    pub fn set(&mut self, check: &str, value: f64) -> Result<()> {
        if !CHECK_NAMES.contains(&check) {
            return Err(Error::InvalidParameter(format!(
                "unknown check '{check}' (expected one of {})",
                CHECK_NAMES.join(", ")
            )));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance for '{check}' must be positive, got {value}"
            )));
        }
        self.0.insert(check.to_string(), value);
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n: usize,
    pub u: ComplexMatrix,
    pub v1: Option<ComplexMatrix>,
    pub v2: Option<ComplexMatrix>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub positivity_trials: usize,
    pub duality_trials: usize,
}

impl SuiteConfig {
    pub fn new(n: usize, u: ComplexMatrix) -> Self {
        Self {
            n,
            u,
            v1: None,
            v2: None,
            seed: 42,
            tolerances: Tolerances::default(),
            positivity_trials: 1000,
            duality_trials: 200,
        }
    }

    /// Φ^U, or the conjugated map when either V is given (the other
    /// defaulting to the identity).
    pub fn map(&self) -> Result<MapDescriptor> {
        if self.v1.is_none() && self.v2.is_none() {
            return phi_u(self.n, self.u.clone());
        }
        let id = ComplexMatrix::identity(4 * self.n);
        conjugated_phi(
            self.n,
            self.u.clone(),
            self.v1.clone().unwrap_or_else(|| id.clone()),
            self.v2.clone().unwrap_or(id),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub family: String,
    pub n: usize,
    pub d: usize,
    pub checks: Vec<CertReport>,
    pub verdict: Verdict,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn check(&self, name: &str) -> Option<&CertReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every check in [`CHECK_NAMES`]. Only an invalid configuration is an
/// error; failed checks show up in the report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let map = cfg.map()?;
    let w = choi(&map)?;
    let tol = |name: &str| cfg.tolerances.get(name);
    let checks = vec![
        verify_positivity(&map, cfg.positivity_trials, cfg.seed, tol("positivity")),
        verify_spectrum(&w, cfg.n, tol("spectrum")),
        verify_witness_nondecomposability(&w, tol("nondecomposability")),
        verify_optimality(&w, tol("optimality")),
        verify_nd_optimality(&w, tol("nd-optimality")),
        verify_self_duality(&map, cfg.duality_trials, cfg.seed, tol("self-duality")),
        verify_spa_threshold(&w, tol("spa-threshold")),
        verify_eb_certificate(&map, tol("eb-certificate")),
    ];
    let verdict = Verdict::from_bool(checks.iter().all(CertReport::passed));
    Ok(SuiteReport {
        family: map.family().name().to_string(),
        n: cfg.n,
        d: map.dim(),
        checks,
        verdict,
    })
}
