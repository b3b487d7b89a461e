use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vortrans"))
        .args(args)
        .env_remove("VORTRANS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(|r| r.unwrap()).collect()
}

const DIPOLE: &str = r#"{
  "version": "1",
  "beam": {"winding": 1},
  "w_ratio": 1e-4,
  "initial": {"electronic": {"n": 1, "l": 0, "m": 0}, "cm": {"n": 6, "m": 0}},
  "final": {"electronic": {"n": 2, "l": 1, "m": 1}, "cm": {"n": 7, "m": 1}}
}"#;

fn evaluate(dir: &Path, json: &str) -> (Output, Option<Value>) {
    let path = dir.join("scenario.json");
    std::fs::write(&path, json).unwrap();
    let out = run(&["evaluate", "--scenario", path.to_str().unwrap()]);
    let value = serde_json::from_slice(&out.stdout).ok();
    (out, value)
}

#[test]
fn dipole_scenario_has_nonzero_amplitude_with_dm_equal_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let (out, v) = evaluate(dir.path(), DIPOLE);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = v.unwrap();
    assert!(v["total_probability"].as_f64().unwrap() > 0.0);
    let results = v["results"].as_array().unwrap();
    assert!(!results.is_empty());
    for r in results {
        let dm = r["final"]["m"].as_i64().unwrap() - r["initial"]["m"].as_i64().unwrap();
        assert_eq!(r["channel"]["l_prime"], 0);
        assert_eq!(dm, r["channel"]["sigma"].as_i64().unwrap());
    }
    assert_eq!(v["conservation"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn forbidden_cm_change_gives_zero_and_clean_report() {
    let dir = tempfile::tempdir().unwrap();
    let (out, v) = evaluate(dir.path(), &DIPOLE.replace(r#""n": 7, "m": 1"#, r#""n": 7, "m": 3"#));
    assert_eq!(out.status.code(), Some(0));
    let v = v.unwrap();
    assert_eq!(v["total_probability"].as_f64(), Some(0.0));
    assert_eq!(v["conservation"]["nonzero"], 0);
    assert_eq!(v["conservation"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn include_zero_lists_every_channel() {
    let dir = tempfile::tempdir().unwrap();
    let json = DIPOLE.replace(r#""w_ratio""#, r#""output": {"include_zero": true}, "w_ratio""#);
    let (_, v) = evaluate(dir.path(), &json);
    let v = v.unwrap();
    // l = 1, order <= 2: (p, l') in {(0,0), (1,0), (0,1)}, 3 σ, 2 branches
    assert_eq!(v["results"].as_array().unwrap().len(), 18);
}

#[test]
fn emission_scenario_mirrors_absorption() {
    let dir = tempfile::tempdir().unwrap();
    let (_, abs) = evaluate(dir.path(), DIPOLE);
    let swapped = r#"{
      "version": "1", "process": "emission",
      "beam": {"winding": 1},
      "w_ratio": 1e-4,
      "initial": {"electronic": {"n": 2, "l": 1, "m": 1}, "cm": {"n": 7, "m": 1, "k": 40}},
      "final": {"electronic": {"n": 1, "l": 0, "m": 0}, "cm": {"n": 6, "m": 0}}
    }"#;
    let (out, em) = evaluate(dir.path(), swapped);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (a, e) = (abs.unwrap()["total_probability"].as_f64().unwrap(), em.unwrap()["total_probability"].as_f64().unwrap());
    assert!((a - e).abs() <= 1e-12 * a, "{a} vs {e}");
}

#[test]
fn slater_radial_profiles_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let json = DIPOLE
        .replace(r#""n": 1, "l": 0, "m": 0}"#, r#""n": 1, "l": 0, "m": 0, "radial": {"kind": "slater", "zeta": 1.0}}"#)
        .replace(r#""n": 2, "l": 1, "m": 1}"#, r#""n": 2, "l": 1, "m": 1, "radial": {"kind": "slater", "zeta": 0.5}}"#);
    let (out, v) = evaluate(dir.path(), &json);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(v.unwrap()["total_probability"].as_f64().unwrap() > 0.0);
}

#[test]
fn invalid_scenarios_exit_2_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            DIPOLE.replace(r#""w_ratio""#, r#""atom": {"mass_fraction_n": 0.6, "mass_fraction_e": 0.6}, "w_ratio""#),
            "atom",
        ),
        (DIPOLE.replace(r#""version": "1""#, r#""version": "2""#), "version"),
        (DIPOLE.replace("1e-4", "-1"), "w_ratio"),
        (DIPOLE.replace(r#""l": 1, "m": 1"#, r#""l": "one", "m": 1"#), "final.electronic.l"),
        (DIPOLE.replace(r#""l": 1, "m": 1"#, r#""l": 1, "m": 2"#), "final.electronic"),
        (DIPOLE.replace(r#""n": 7, "m": 1"#, r#""n": 7, "m": 2"#), "final.cm"),
        (DIPOLE.replace(r#""winding": 1"#, r#""winding": 1, "colour": 3"#), "beam"),
    ];
    for (json, path) in cases {
        let (out, _) = evaluate(dir.path(), &json);
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(2), "{path}: {err}");
        assert!(err.contains(&format!("`{path}")), "{path}: {err}");
    }
    let missing = run(&["evaluate", "--scenario", "/nonexistent/scenario.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn selection_rules_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();

    assert_eq!(run(&["selection-rules", "--l", "-3", "--order", "2", "--csv", p]).status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let quad: Vec<_> = rows(&text).into_iter().filter(|r| &r[2] == "1").collect();
    assert_eq!(quad.len(), 1);
    assert_eq!((&quad[0][8], &quad[0][9]), ("-|l|+1", "-2"));

    assert_eq!(run(&["selection-rules", "--l", "0", "--order", "1", "--csv", p]).status.code(), Some(0));
    let r = rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(r.len(), 1);
    assert_eq!(&r[0][9], "0");

    let a = stdout(&run(&["selection-rules", "--l", "2"]));
    let b = stdout(&run(&["selection-rules", "--l", "2"]));
    assert_eq!(a, b);
}

#[test]
fn malformed_flags_exit_2() {
    for args in [
        &["selection-rules", "--l", "x"][..],
        &["selection-rules", "--l", "1", "--order", "3"],
        &["cm-spectrum", "--l", "2", "--wr-ratio", "-1"],
        &["scan", "--wr-ratios", "1e-4,abc"],
        &["scan", "--l-min", "4", "--l-max", "1"],
        &["verify", "--suite", "nope"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_vortrans"))
        .args(["scan", "--l-max", "1"])
        .env("VORTRANS_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn winding_zero_spectrum_keeps_cm_angular_momentum() {
    let out = run(&["cm-spectrum", "--l", "0", "--Mi", "2", "--Ni", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&stdout(&out));
    assert!(!r.is_empty());
    assert!(r.iter().all(|r| &r[1] == "2"));
    // plane-wave limit: only the initial state itself is reached
    let nonzero: Vec<_> = r.iter().filter(|r| &r[3] != "0").map(|r| r[0].to_string()).collect();
    assert_eq!(nonzero, ["4"]);
}

#[test]
fn spectrum_normalization_column_is_one_at_reference() {
    let r = rows(&stdout(&run(&["cm-spectrum", "--l", "2"])));
    let reference: Vec<_> = r.iter().filter(|r| &r[0] == "6").collect();
    assert!(reference.iter().any(|r| &r[4] == "1.0000000000000000e0"));
}

#[test]
fn scan_rows_follow_winding_parity_and_order() {
    let r = rows(&stdout(&run(&["scan", "--wr-ratios", "1e-3,1e-4"])));
    let keys: Vec<(i64, f64)> = r.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    assert_eq!(keys, sorted);
    for row in &r {
        let l: i64 = row[0].parse().unwrap();
        assert_eq!(row[2].parse::<i64>().unwrap(), l.rem_euclid(2));
    }
}

#[test]
fn verify_radial_writes_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "radial", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    let radial = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "cm_radial_closed_form_vs_exact")
        .expect("radial check present");
    assert_eq!(radial["samples"], 500);
}
