use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tangleroof::curve::parse_csv;
use tangleroof::{three_tangle, PureState3Q, RoofRegion};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangleroof"))
        .args(args)
        .env_remove("TANGLEROOF_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_state(dir: &Path, name: &str, state: &PureState3Q) -> String {
    let path = dir.join(name);
    fs::write(&path, state.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn tangle_of_known_states() {
    let dir = tempfile::tempdir().unwrap();
    let ghz = tangleroof::FamilyParams::symmetric().ghz_state();
    let path = write_state(dir.path(), "ghz.json", &ghz);
    let out = run(&["tangle", &path]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1.0");

    let path = write_state(dir.path(), "zero.json", &PureState3Q::basis(0, 0, 0));
    let out = run(&["tangle", &path]);
    assert_eq!(stdout(&out).trim(), "0.0");

    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    let state = PureState3Q::random(&mut rng);
    let path = write_state(dir.path(), "random.json", &state);
    let printed: f64 = stdout(&run(&["tangle", &path])).trim().parse().unwrap();
    assert!((printed - three_tangle(&state)).abs() < 1e-14);
}

#[test]
fn tangle_rejects_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "[{\"re\": 1.0, \"im\": 0.0}]").unwrap();
    let out = run(&["tangle", path.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

fn roof_rows(s: &str, dir: &Path) -> (Vec<tangleroof::curve::CurveRow>, String) {
    let path = dir.join(format!("roof_{s}.csv"));
    let out = run(&[
        "roof", "--s", s, "--tau-ghz", "0.0396", "--grid", "201", "--phi-grid", "360", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    (parse_csv(&text).unwrap(), stdout(&out))
}

#[test]
fn roof_regions_follow_s() {
    let dir = tempfile::tempdir().unwrap();
    let (rows, summary) = roof_rows("7", dir.path());
    assert!(summary.contains("p0 = ") && summary.contains("p1 = "));
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| r.region != RoofRegion::CharacteristicCurve));

    let (rows, _) = roof_rows("2.3", dir.path());
    assert!(rows.iter().any(|r| r.region == RoofRegion::CharacteristicCurve));
    for r in &rows {
        assert!(r.tau_roof <= r.tau_char_min + 1e-12, "p = {}", r.p);
    }
}

#[test]
fn roof_csv_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let (rows, _) = roof_rows("2.3", dir.path());
    let mut buf = Vec::new();
    tangleroof::curve::write_csv(&mut buf, &rows).unwrap();
    let again = parse_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
    for (x, y) in rows.iter().zip(&again) {
        assert_eq!(x.p.to_bits(), y.p.to_bits());
        assert_eq!(x.tau_roof.to_bits(), y.tau_roof.to_bits());
        assert_eq!(x.t_signed.to_bits(), y.t_signed.to_bits());
    }
}

#[test]
fn roof_to_stdout_keeps_summary_on_stderr() {
    let out = run(&["roof", "--symmetric", "--grid", "11", "--phi-grid", "24"]);
    assert!(out.status.success());
    let rows = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 11);
    assert!(String::from_utf8_lossy(&out.stderr).contains("tau_ghz"));
}

#[test]
fn conflicting_family_flags_are_rejected() {
    let out = run(&[
        "roof", "--a", "1", "--b", "0", "--c", "0", "--d", "0", "--f", "1", "--s", "1",
        "--tau-ghz", "0.5",
    ]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
    let out = run(&["roof", "--s", "1"]);
    assert!(!out.status.success());
}

fn verify_json(family: &[&str]) -> (serde_json::Value, Output) {
    let mut args = vec!["verify", "--p-grid", "5", "--sizes", "3,4", "--restarts", "3"];
    args.extend_from_slice(family);
    let out = run(&args);
    let doc = serde_json::from_slice(&out.stdout).expect("verify JSON");
    (doc, out)
}

#[test]
fn verify_degenerate_families() {
    let r = std::f64::consts::FRAC_1_SQRT_2.to_string();
    // b = 0: roof vanishes identically.
    let (doc, out) = verify_json(&["--a", "1", "--b", "0", "--c", &r, "--d", "0", "--f", &r]);
    assert!(out.status.success());
    assert_eq!(doc["summary"]["falsified"], false);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row["analytic"], 0.0);
    }
    // c = 0: no W-part tangle cancellation.
    let (doc, out) = verify_json(&["--a", &r, "--b", &r, "--c", "0", "--d", &r, "--f", &r]);
    assert!(out.status.success());
    assert_eq!(doc["summary"]["falsified"], false);
    assert!(doc["summary"]["max_gap"].as_f64().unwrap() < 1e-3);
}

#[test]
fn verify_seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tangleroof"))
        .args(["verify", "--symmetric", "--p-grid", "2", "--sizes", "3", "--restarts", "1"])
        .env("TANGLEROOF_SEED", "99")
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["params"]["seed"], 99);
}

fn decomposition(p: &str) -> serde_json::Value {
    let out = run(&["decomposition", "--s", "2.3", "--tau-ghz", "0.0396", "--p", p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decomposition_documents() {
    let doc = decomposition("1");
    assert_eq!(doc["members"].as_array().unwrap().len(), 1);
    assert!(doc["residual"].as_f64().unwrap() <= 1e-12);

    let p0 = tangleroof::p_zero(2.3).unwrap().to_string();
    let doc = decomposition(&p0);
    assert!(doc["average_tangle"].as_f64().unwrap() < 1e-12);

    let doc = decomposition("0.9");
    assert_eq!(doc["region"], "CONVEXIFIED");
    let members = doc["members"].as_array().unwrap();
    assert_eq!(members.len(), 4);
    assert_eq!(members[0]["amplitudes"].as_array().unwrap().len(), 8);
    let avg = doc["average_tangle"].as_f64().unwrap();
    assert!((avg - doc["roof_value"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn figure1_writes_both_panels() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "figure1", "--out-dir", dir.path().to_str().unwrap(), "--grid", "101", "--phi-grid", "120",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p1_noabs"));
    for name in ["figure1a.csv", "figure1b.csv"] {
        let rows = parse_csv(&fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        assert_eq!(rows.len(), 101);
    }
}
