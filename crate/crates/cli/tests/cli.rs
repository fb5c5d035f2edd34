use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsl")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn disk_span_report() {
    let out = hsl(&["--nodes", "128", "span", &data("disk.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    // Printed values carry 9 significant digits.
    let close = |key: &str, x: f64| (v[key].as_f64().unwrap() - x).abs() < 1e-8 * x.abs();
    assert!(close("alpha", (16.0f64 / 3.0).ln()));
    assert!(close("beta", 3f64.ln()));
    assert!(close("span", 2.0 * (4.0f64 / 3.0).ln()));
    assert!(close("poincare_distance", 0.5 * 3f64.ln()));
    assert!(v["identity_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["slits"]["circular"].as_array().unwrap().len(), 1);
}

#[test]
fn multiply_connected_span_has_slits_but_no_distance() {
    let out = hsl(&["--nodes", "128", "span", &data("annulus_offset.json")]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["connectivity"], 2);
    assert!(v.get("poincare_distance").is_none());
    assert_eq!(v["slits"]["radial"].as_array().unwrap().len(), 2);
    assert!(v["span"].as_f64().unwrap() > 0.0);
}

#[test]
fn input_errors_exit_with_two() {
    let out = hsl(&["span", &data("coincident.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("marked points coincide"));
    assert_eq!(hsl(&["span", "/nonexistent/domain.json"]).status.code(), Some(2));
    assert_eq!(hsl(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(hsl(&["--nodes", "15", "verify", "disk"]).status.code(), Some(2));
    assert_eq!(hsl(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_disk_suite() {
    let out = hsl(&["verify", "disk"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("[")).count(), 6);
    assert!(!text.contains("FAIL"));
}

#[test]
fn product_family_scan_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let args = ["--nodes", "64", "scan", &data("family_product.json"), "--grid", "3", "--radius", "0.2"];
    let out = hsl(&[&args[..], &["--out", out_dir, "--emit", "csv,json,svg"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(dir.path().join("scan.csv")).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["t_re", "t_im", "span", "alpha", "beta", "lap_span", "lap_beta", "min_k2", "status"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r[5].parse::<f64>().unwrap().abs() < 1e-6);
        assert!(r[6].parse::<f64>().unwrap().abs() < 1e-6);
        assert_eq!(&r[8], "ok");
    }
    let verdict: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verdict.json")).unwrap()).unwrap();
    assert_eq!(verdict["pseudoconvex"], true);
    assert!(dir.path().join("span_heatmap.svg").exists());
    assert!(dir.path().join("slits.svg").exists());
}

#[test]
fn hartogs_scan_verdict_and_determinism() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let out_dir = dir.path().to_str().unwrap();
        let out = hsl(&["--nodes", "64", "scan", &data("family_hartogs.json"), "--grid", "3", "--radius", "0.2", "--out", out_dir]);
        assert!(out.status.success());
        (fs::read_to_string(dir.path().join("scan.csv")).unwrap(), stdout_json(&out))
    };
    let (csv1, v) = run();
    assert_eq!(v["pseudoconvex"], true);
    assert_eq!(v["span_subharmonic"], true);
    assert_eq!(v["beta_superharmonic"], true);
    let (csv2, _) = run();
    assert_eq!(csv1, csv2);
}

#[test]
fn sfunction_marks_the_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = hsl(&[
        "--nodes", "128", "sfunction", &data("annulus_offset.json"), "--xi", "0.3,0", "--center", "0.3,0",
        "--grid", "3", "--radius", "0.25", "--out", out_dir,
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("sfunction.csv")).unwrap();
    let center = text.lines().nth(5).unwrap();
    assert_eq!(center, "0.3,0.0,0.0,diagonal");
    assert_eq!(text.lines().filter(|l| l.ends_with(",ok")).count(), 8);
}
