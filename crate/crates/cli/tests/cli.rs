use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn robertson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robertson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn build_canonical_n1() {
    let o = robertson(&["build", "--n", "1", "--u", "canonical", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["family"], "PhiU4N");
    assert_eq!(v["d"], 16);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 16));
    let trace: f64 = (0..16).map(|i| rows[i][i][0].as_f64().unwrap()).sum();
    assert!((trace - 1.0).abs() < 1e-12);
}

#[test]
fn build_seeded_n2_is_64_by_64() {
    let o = robertson(&["build", "--n", "2", "--u", "seed:7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["d"], 64);
    assert_eq!(v["local_dim"], 8);
}

#[test]
fn build_n0_is_a_usage_error() {
    let o = robertson(&["build", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_specs_are_usage_errors() {
    for args in [
        &["build", "--n", "1", "--u", "random"][..],
        &["build", "--n", "1", "--u", "file:/nonexistent/u.json"],
        &["certify", "--n", "1", "--tol", "nope=1e-3"],
        &["build", "--n", "1", "--output", "csv"],
    ] {
        assert_eq!(robertson(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn certify_canonical_n1_passes_all_checks() {
    let o = robertson(&[
        "certify",
        "--n",
        "1",
        "--u",
        "canonical",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["family"], "PhiU4N");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    assert!(checks.iter().all(|c| c["verdict"] == "pass"));
    let nd = checks
        .iter()
        .find(|c| c["name"] == "nondecomposability")
        .unwrap();
    assert!((nd["measured"].as_f64().unwrap() + 1.0 / 80.0).abs() < 1e-12);
}

#[test]
fn certify_seeded_n2_passes() {
    let o = robertson(&["certify", "--n", "2", "--u", "seed:3", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn certify_conjugated_family() {
    let o = robertson(&[
        "certify",
        "--n",
        "1",
        "--u",
        "canonical",
        "--v1",
        "seed:1",
        "--v2",
        "seed:2",
        "--output",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["family"], "ConjugatedPhiU");
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn certify_failing_tolerance_exits_1() {
    let o = robertson(&[
        "certify",
        "--n",
        "1",
        "--tol",
        "spectrum=1e-30",
        "--output",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("check,measured,expected,tolerance,verdict\n"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("spectrum,") && l.ends_with(",fail")));
}

#[test]
fn certify_json_is_deterministic() {
    let args = ["certify", "--n", "1", "--u", "seed:4", "--output", "json"];
    assert_eq!(robertson(&args).stdout, robertson(&args).stdout);
}

#[test]
fn curve_crosses_at_threshold() {
    for (n, root) in [("1", 0.8), ("2", 8.0 / 9.0)] {
        let o = robertson(&["curve", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.starts_with("lambda,closed_form,numeric,abs_diff\n"));
        let rows: Vec<[f64; 4]> = csv_rows(&text)
            .iter()
            .map(|r| [0, 1, 2, 3].map(|i| r[i].parse().unwrap()))
            .collect();
        assert_eq!(rows.len(), 11);
        assert!(rows.iter().all(|r| r[3] < 1e-12));
        let crossing = rows
            .windows(2)
            .find(|w| w[0][2] < 0.0 && w[1][2] >= -1e-12)
            .unwrap();
        assert!(crossing[0][0] < root && root <= crossing[1][0] + 1e-12);
        if n == "1" {
            assert!(crossing[0][0] >= 0.7 - 1e-12 && crossing[1][0] <= 0.9 + 1e-12);
        }
    }
}

#[test]
fn curve_conjugated_matches_closed_form() {
    let o = robertson(&[
        "curve", "--n", "1", "--v1", "seed:5", "--v2", "seed:6", "--output", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["root"].as_f64().unwrap() - 0.8).abs() < 1e-15);
    for p in v["points"].as_array().unwrap() {
        assert!(p["abs_diff"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn spectrum_csv_matches_closed_form() {
    let o = robertson(&["spectrum", "--n", "2", "--u", "cseed:9"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 64);
    assert!((rows[0][1].parse::<f64>().unwrap() + 0.125).abs() < 1e-9);
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() < 1e-9));
}

#[test]
fn u_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let built = dir.path().join("w.json");
    let o = robertson(&[
        "build",
        "--n",
        "2",
        "--u",
        "cseed:11",
        "--out-path",
        built.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&built).unwrap()).unwrap();

    let u_path = dir.path().join("u.json");
    std::fs::write(&u_path, serde_json::to_string(&v["u"]).unwrap()).unwrap();
    let spec = format!("file:{}", u_path.display());
    let again = robertson(&["build", "--n", "2", "--u", &spec]);
    assert_eq!(again.status.code(), Some(0));
    let w = json(&again);
    assert_eq!(w["rows"], v["rows"]);
    assert_eq!(w["u"], v["u"]);
}

#[test]
fn u_file_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        format!("file:{}", p.display())
    };
    // symmetric, not antisymmetric
    let sym = write(
        "sym.json",
        r#"{"d":2,"rows":[[[0,0],[1,0]],[[1,0],[0,0]]]}"#,
    );
    // antisymmetric but UU† = 4
    let big = write(
        "big.json",
        r#"{"d":2,"rows":[[[0,0],[2,0]],[[-2,0],[0,0]]]}"#,
    );
    let ragged = write("ragged.json", r#"{"d":2,"rows":[[[0,0]],[[1,0],[0,0]]]}"#);
    let wrong_dim = write("dim.json", r#"{"d":1,"rows":[[[0,0]]]}"#);
    for spec in [sym, big, ragged, wrong_dim] {
        let o = robertson(&["build", "--n", "1", "--u", &spec]);
        assert_eq!(o.status.code(), Some(2), "{spec}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn unwritable_out_path_is_an_error() {
    let o = robertson(&["build", "--n", "1", "--out-path", "/nonexistent/dir/w.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!Path::new("/nonexistent/dir/w.json").exists());
}
