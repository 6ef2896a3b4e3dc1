//! The four subcommands. Each returns the rendered output and whether every
//! check it ran passed.

use anyhow::{bail, Result};
use robertson_core::certify::{detect_matrix, isotropic_detection_value, run_suite, SuiteConfig};
use robertson_core::linalg::eigenvalues;
use robertson_core::states::isotropic_matrix;
use robertson_core::witness::{choi, expected_spectrum, local_frame};
use robertson_core::CertReport;
use serde::Serialize;

use crate::matrix_io::MatrixJson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Largest accepted |closed form − numeric| on the detection curve.
pub const CURVE_TOL: f64 = 1e-12;

pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

#[derive(Serialize)]
struct BuildOutput {
    family: String,
    n: usize,
    local_dim: usize,
    u: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    v1: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v2: Option<MatrixJson>,
    #[serde(flatten)]
    witness: MatrixJson,
}

pub fn build(cfg: &SuiteConfig, format: Format) -> Result<Outcome> {
    let map = cfg.map()?;
    let w = choi(&map)?;
    let body = match format {
        Format::Json => {
            let out = BuildOutput {
                family: map.family().name().to_string(),
                n: cfg.n,
                local_dim: w.d(),
                u: MatrixJson::from_matrix(&cfg.u),
                v1: map.v1().map(MatrixJson::from_matrix),
                v2: map.v2().map(MatrixJson::from_matrix),
                witness: MatrixJson::from_matrix(w.matrix()),
            };
            serde_json::to_string_pretty(&out)? + "\n"
        }
        Format::Text => {
            let m = w.matrix();
            format!(
                "family {}\nN {}\nlocal dimension {}\nwitness {}x{}\ntrace {:.15}\nhermiticity defect {:e}\n",
                map.family(),
                cfg.n,
                w.d(),
                m.rows(),
                m.cols(),
                m.trace().re,
                m.hermiticity_defect()
            )
        }
        Format::Csv => bail!("build supports json and text output"),
    };
    Ok(Outcome { body, passed: true })
}

pub fn certify(cfg: &SuiteConfig, format: Format) -> Result<Outcome> {
    let report = run_suite(cfg)?;
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut out = String::from("check,measured,expected,tolerance,verdict\n");
            for c in &report.checks {
                csv_report_row(&mut out, &c.name, c);
                for p in &c.parts {
                    csv_report_row(&mut out, &format!("{}.{}", c.name, p.name), p);
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!("{} N={} d={}\n", report.family, report.n, report.d);
            for c in &report.checks {
                out += &format!("{c}\n");
                for p in &c.parts {
                    out += &format!("    {p}\n");
                }
            }
            let passed = report.checks.iter().filter(|c| c.passed()).count();
            out += &format!(
                "verdict: {} ({passed}/{})\n",
                report.verdict,
                report.checks.len()
            );
            out
        }
    };
    Ok(Outcome {
        body,
        passed: report.passed(),
    })
}

/// Shortest round-trip form, switching to exponent notation for very small
/// or large magnitudes.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || (1e-4..1e6).contains(&x.abs()) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn csv_report_row(out: &mut String, name: &str, r: &CertReport) {
    let expected = r.expected.map(num).unwrap_or_default();
    out.push_str(&format!(
        "{name},{},{expected},{},{}\n",
        num(r.measured.real_part()),
        num(r.tolerance),
        r.verdict
    ));
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    pub lambda: f64,
    pub closed_form: f64,
    pub numeric: f64,
    pub abs_diff: f64,
}

#[derive(Serialize)]
struct CurveOutput<'a> {
    family: String,
    n: usize,
    root: f64,
    points: &'a [CurvePoint],
}

/// Tr(W·ρ_λ) on an even λ grid, once from the closed form and once from the
/// witness matrix. For a conjugated witness the isotropic state is moved into
/// the same local frame, which leaves the value unchanged.
pub fn curve_points(cfg: &SuiteConfig, lo: f64, hi: f64, points: usize) -> Result<Vec<CurvePoint>> {
    if points < 2 {
        bail!("the curve needs at least 2 points, got {points}");
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        bail!("invalid lambda range [{lo}, {hi}]");
    }
    let map = cfg.map()?;
    let w = choi(&map)?;
    let d = w.d();
    let frame = match (map.v1(), map.v2()) {
        (Some(v1), Some(v2)) => Some(local_frame(v1, v2)),
        _ => None,
    };
    (0..points)
        .map(|k| {
            let lambda = lo + (hi - lo) * k as f64 / (points - 1) as f64;
            let mut rho = isotropic_matrix(d, lambda);
            if let Some(l) = &frame {
                rho = rho.conjugate_by(l)?;
            }
            let numeric = detect_matrix(w.matrix(), &rho)?;
            let closed_form = isotropic_detection_value(cfg.n, lambda);
            Ok(CurvePoint {
                lambda,
                closed_form,
                numeric,
                abs_diff: (closed_form - numeric).abs(),
            })
        })
        .collect()
}

pub fn curve(
    cfg: &SuiteConfig,
    lo: f64,
    hi: f64,
    points: usize,
    format: Format,
) -> Result<Outcome> {
    let pts = curve_points(cfg, lo, hi, points)?;
    let passed = pts.iter().all(|p| p.abs_diff < CURVE_TOL);
    let nf = 4.0 * cfg.n as f64;
    let root = nf / (nf + 1.0);
    let body = match format {
        Format::Csv => {
            let mut out = String::from("lambda,closed_form,numeric,abs_diff\n");
            for p in &pts {
                out += &format!(
                    "{},{},{},{}\n",
                    num(p.lambda),
                    num(p.closed_form),
                    num(p.numeric),
                    num(p.abs_diff)
                );
            }
            out
        }
        Format::Json => {
            let family = cfg.map()?.family().name().to_string();
            let out = CurveOutput {
                family,
                n: cfg.n,
                root,
                points: &pts,
            };
            serde_json::to_string_pretty(&out)? + "\n"
        }
        Format::Text => {
            let mut out = format!(
                "{:>8}  {:>14}  {:>14}  {:>9}\n",
                "lambda", "closed form", "numeric", "|diff|"
            );
            for p in &pts {
                out += &format!(
                    "{:>8.4}  {:>14.6e}  {:>14.6e}  {:>9.1e}\n",
                    p.lambda, p.closed_form, p.numeric, p.abs_diff
                );
            }
            out += &format!("zero crossing at lambda = {root}\n");
            out
        }
    };
    Ok(Outcome { body, passed })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumRow {
    pub index: usize,
    pub eigenvalue: f64,
    pub expected: Option<f64>,
    pub abs_diff: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumOutput<'a> {
    family: String,
    n: usize,
    d: usize,
    max_abs_diff: Option<f64>,
    eigenvalues: &'a [SpectrumRow],
}

/// Sorted eigenvalues of the witness next to the closed form. The closed
/// form is only known for unitary U, so for a contraction the comparison
/// columns are left empty.
pub fn spectrum_rows(cfg: &SuiteConfig) -> Result<Vec<SpectrumRow>> {
    let map = cfg.map()?;
    let w = choi(&map)?;
    let spec = eigenvalues(w.matrix(), cfg.tolerances.get("spectrum"))?;
    let expected: Option<Vec<f64>> = map.has_unitary_u().then(|| {
        expected_spectrum(cfg.n)
            .into_iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, m))
            .collect()
    });
    Ok(spec
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(index, &eigenvalue)| {
            let e = expected.as_ref().map(|x| x[index]);
            SpectrumRow {
                index,
                eigenvalue,
                expected: e,
                abs_diff: e.map(|e| (e - eigenvalue).abs()),
            }
        })
        .collect())
}

pub fn spectrum(cfg: &SuiteConfig, format: Format) -> Result<Outcome> {
    let rows = spectrum_rows(cfg)?;
    let tol = cfg.tolerances.get("spectrum");
    let max_abs_diff = rows.iter().filter_map(|r| r.abs_diff).reduce(f64::max);
    let passed = max_abs_diff.is_none_or(|m| m <= tol);
    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    let body = match format {
        Format::Csv => {
            let mut out = String::from("index,eigenvalue,expected,abs_diff\n");
            for r in &rows {
                out += &format!(
                    "{},{},{},{}\n",
                    r.index,
                    num(r.eigenvalue),
                    opt(r.expected),
                    opt(r.abs_diff)
                );
            }
            out
        }
        Format::Json => {
            let out = SpectrumOutput {
                family: cfg.map()?.family().name().to_string(),
                n: cfg.n,
                d: rows.len(),
                max_abs_diff,
                eigenvalues: &rows,
            };
            serde_json::to_string_pretty(&out)? + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            let mut i = 0;
            while i < rows.len() {
                let j = rows[i..]
                    .iter()
                    .position(|r| (r.eigenvalue - rows[i].eigenvalue).abs() > 1e-9)
                    .map_or(rows.len(), |k| i + k);
                out += &format!("{:>14.6e}  x{}\n", rows[i].eigenvalue, j - i);
                i = j;
            }
            match max_abs_diff {
                Some(m) => {
                    out += &format!("max deviation from closed form {m:.1e} (tol {tol:.1e})\n")
                }
                None => out += "no closed form for a non-unitary U\n",
            }
            out
        }
    };
    Ok(Outcome { body, passed })
}
