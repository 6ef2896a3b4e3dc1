use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Measured {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Measured {
    pub fn real_part(self) -> f64 {
        match self {
            Measured::Real(x) => x,
            Measured::Complex { re, .. } => re,
        }
    }
}

impl From<f64> for Measured {
    fn from(x: f64) -> Self {
        Measured::Real(x)
    }
}

impl From<C64> for Measured {
    fn from(z: C64) -> Self {
        Measured::Complex { re: z.re, im: z.im }
    }
}

impl fmt::Display for Measured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measured::Real(x) => write!(f, "{x:.6e}"),
            Measured::Complex { re, im } => write!(f, "{re:.6e}{im:+.6e}i"),
        }
    }
}

/// Outcome of one certificate.
///
/// With `expected` present the verdict is `|measured − expected| ≤ tolerance`.
/// Without it, the rule is spelled out in `details`; composite checks use
/// "all parts pass" and list the parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub name: String,
    pub measured: Measured,
    pub expected: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub details: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<CertReport>,
}

impl CertReport {
    /// Verdict from |measured − expected| ≤ tolerance.
    pub fn compare(
        name: &str,
        measured: impl Into<Measured>,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let measured = measured.into();
        let deviation = match measured {
            Measured::Real(x) => (x - expected).abs(),
            Measured::Complex { re, im } => C64::new(re - expected, im).norm(),
        };
        Self {
            name: name.to_string(),
            measured,
            expected: Some(expected),
            tolerance,
            verdict: Verdict::from_bool(deviation <= tolerance),
            details: format!("|measured - expected| = {deviation:.3e}"),
            parts: Vec::new(),
        }
    }

    /// Verdict decided by a caller-side rule, described in `details`.
    pub fn rule(
        name: &str,
        measured: impl Into<Measured>,
        tolerance: f64,
        passed: bool,
        details: impl Into<String>,
    ) -> Self {
        Self {
            name: name.to_string(),
            measured: measured.into(),
            expected: None,
            tolerance,
            verdict: Verdict::from_bool(passed),
            details: details.into(),
            parts: Vec::new(),
        }
    }

    /// Passes iff every part passes. `headline` is reported as the measured value.
    pub fn composite(name: &str, headline: impl Into<Measured>, parts: Vec<CertReport>) -> Self {
        let failed: Vec<&str> = parts
            .iter()
            .filter(|p| !p.passed())
            .map(|p| p.name.as_str())
            .collect();
        let details = if failed.is_empty() {
            format!("all {} parts pass", parts.len())
        } else {
            format!("failed parts: {}", failed.join(", "))
        };
        let tolerance = parts.iter().map(|p| p.tolerance).fold(0.0, f64::max);
        Self {
            name: name.to_string(),
            measured: headline.into(),
            expected: None,
            tolerance,
            verdict: Verdict::from_bool(failed.is_empty()),
            details,
            parts,
        }
    }

    /// A failing report for a check that could not run.
    pub fn error(name: &str, err: impl fmt::Display) -> Self {
        Self::rule(name, f64::NAN, 0.0, false, format!("error: {err}"))
    }

    pub fn with_details(mut self, extra: impl AsRef<str>) -> Self {
        if !self.details.is_empty() {
            self.details.push_str("; ");
        }
        self.details.push_str(extra.as_ref());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn part(&self, name: &str) -> Option<&CertReport> {
        self.parts.iter().find(|p| p.name == name)
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} measured={}", self.name, self.measured)?;
        if let Some(e) = self.expected {
            write!(f, " expected={e:.6e}")?;
        }
        write!(f, " tol={:.1e} ({})", self.tolerance, self.details)
    }
}
