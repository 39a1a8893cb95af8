use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quditbloch")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn wob_dump_has_nine_labeled_clock_shift_matrices() {
    let v = json(&["basis", "dump", "--kind", "wob", "--dim", "3"]);
    let el = v["elements"].as_array().unwrap();
    assert_eq!(el.len(), 9);
    assert_eq!(el[0]["label"], "U(0,0)");
    let u11 = el.iter().find(|e| e["label"] == "U(1,1)").unwrap();
    assert_eq!(u11["dim"], 3);
    // U₁₁ = |0⟩⟨1| + ω|1⟩⟨2| + ω²|2⟩⟨0|
    assert_eq!(num(&u11["re"][0][1]), 1.0);
    assert!((num(&u11["re"][1][2]) + 0.5).abs() < 1e-15);
    assert!((num(&u11["im"][1][2]) - 3f64.sqrt() / 2.0).abs() < 1e-15);
    assert!((num(&u11["im"][2][0]) + 3f64.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn csv_dump_has_one_row_per_entry() {
    let out = run(&["basis", "dump", "--kind", "ggb", "--dim", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,row,col,re,im");
    assert_eq!(lines.len(), 1 + 9 * 9);
    // labels containing commas are quoted
    assert!(lines[10].starts_with("\"s(1,2)\",0,0,"));
}

#[test]
fn state_file_round_trips_through_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.json");
    let path_s = path.to_str().unwrap();
    let made = run(&["state", "make", "--family", "bell", "--dim", "3", "--out", path_s]);
    assert!(made.status.success() && made.stdout.is_empty());
    let d = json(&["decompose", "--kind", "ggb", "--in", path_s]);
    assert_eq!(d["dim"], 9);
    assert_eq!(d["is_physical"], true);
    assert!((num(&d["purity"]) - 1.0).abs() < 1e-12);
    assert_eq!(d["labels"].as_array().unwrap().len(), 80);
    // pure states sit on the sphere of radius √((d-1)/(dN))
    assert!((num(&d["radius"]) - num(&d["radius_bound"])).abs() < 1e-12);

    let b = json(&["decompose", "--kind", "pob", "--in", path_s, "--bipartite"]);
    assert_eq!(b["local_dim"], 3);
    // maximally entangled: both reduced states are 𝟙/3
    for side in ["local_a", "local_b"] {
        assert!(b[side]["re"].as_array().unwrap().iter().all(|x| num(x).abs() < 1e-12));
    }
}

#[test]
fn decompose_reports_unphysical_hermitian_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, r#"{"dim":2,"re":[[1.5,0],[0,-0.5]],"im":[[0,0],[0,0]]}"#).unwrap();
    let d = json(&["decompose", "--kind", "pob", "--in", path.to_str().unwrap(), "--convention", "expval"]);
    assert_eq!(d["is_physical"], false);
    assert!((num(&d["radius"]) - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn isotropic_measure_matches_closed_form() {
    let v = json(&["measure", "--family", "isotropic", "--dim", "3", "--alpha", "1.0"]);
    assert_eq!(v["region"], "EntangledRegionI");
    assert!((num(&v["D"]) - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((num(&v["B"]) - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["rho0"]["dim"], 9);
    assert!(v.get("oracle_D").is_none());

    let sep = json(&["measure", "--family", "isotropic", "--dim", "2", "--alpha", "0.2"]);
    assert_eq!(sep["region"], "Separable");
    assert_eq!(num(&sep["D"]), 0.0);
    assert!(sep["witness"].is_null() && sep["B"].is_null());
}

#[test]
fn plane_measure_with_oracle() {
    let v = json(&["measure", "--family", "qubit2p", "--alpha", "-0.8", "--beta", "-1.6", "--oracle"]);
    assert_eq!(v["region"], "EntangledRegionII");
    let closed = 1.4 / (2.0 * 3f64.sqrt());
    assert!((num(&v["D"]) - closed).abs() < 1e-12);
    let oracle = num(&v["oracle_D"]);
    assert!(oracle >= closed - 1e-6 && oracle <= closed + 1e-3, "{oracle}");
}

fn sweep_csv(args: &[&str]) -> Vec<Vec<String>> {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["alpha", "beta", "region", "D", "min_eig", "ppt_min_eig"]);
    r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn sweep_grid_and_corner_values() {
    let rows = sweep_csv(&["sweep", "--family", "qubit2p", "--alpha", "-1.2:1.2:5", "--beta", "-1.2:1.2:5"]);
    assert_eq!(rows.len(), 25);
    let origin = &rows[12];
    assert_eq!((origin[0].parse::<f64>().unwrap(), origin[1].parse::<f64>().unwrap()), (0.0, 0.0));
    assert_eq!(origin[2], "Separable");
    assert_eq!(origin[3], "");

    let corner = |family: &str| {
        let rows = sweep_csv(&["sweep", "--family", family, "--alpha", "0:1:2", "--beta", "0:1:2"]);
        let hit = rows.into_iter().find(|r| r[0].parse::<f64>().unwrap() == 1.0 && r[1].parse::<f64>().unwrap() == 0.0);
        let hit = hit.unwrap();
        assert_eq!(hit[2], "EntangledRegionI");
        hit[3].parse::<f64>().unwrap()
    };
    assert!((corner("qubit2p") - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    assert!((corner("qutrit2p") - 2f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn sweep_boundary_is_within_one_cell_of_the_constraint_line() {
    let steps = 121;
    let (lo, hi) = (-0.5, 1.0);
    let h = (hi - lo) / (steps - 1) as f64;
    let spec = format!("{lo}:{hi}:{steps}");
    let rows = sweep_csv(&["sweep", "--family", "qutrit2p", "--alpha", &spec, "--beta", "0:0.5:6"]);
    for beta_row in rows.chunks(steps) {
        let beta: f64 = beta_row[0][1].parse().unwrap();
        let first = beta_row.iter().find(|r| r[2] == "EntangledRegionI").expect("Region I present");
        let alpha: f64 = first[0].parse().unwrap();
        // grid points on the line itself are labeled Separable
        assert!((alpha - (beta / 8.0 + 0.25)).abs() <= h * (1.0 + 1e-9), "β = {beta}: edge at {alpha}");
    }
}

#[test]
fn outputs_are_byte_identical_and_json_sweep_keeps_column_order() {
    let args = ["sweep", "--family", "qutrit2p", "--alpha", "-0.2:1:7", "--beta", "-0.3:1:5", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&String> = v["rows"][0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["alpha", "beta", "region", "D", "min_eig", "ppt_min_eig"]);

    let picked = json(&["sweep", "--family", "qubit2p", "--alpha", "0:1:3", "--beta", "0:1:3", "--format", "json", "--outputs", "D"]);
    let keys: Vec<&String> = picked["rows"][0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["alpha", "beta", "D"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    let unknown = run(&["basis", "dump", "--kind", "ggb", "--dim", "3", "--frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(!unknown.stderr.is_empty());
    assert_eq!(run(&["basis", "dump", "--kind", "xyz", "--dim", "3"]).status.code(), Some(1));
    assert_eq!(run(&["state", "make", "--family", "isotropic", "--dim", "3"]).status.code(), Some(1));
    // domain errors
    assert_eq!(run(&["basis", "dump", "--kind", "ggb", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(run(&["state", "make", "--family", "qubit2p", "--alpha", "-0.9", "--beta", "0"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--family", "qubit2p", "--alpha", "1:0:3", "--beta", "0:1:3"]).status.code(), Some(2));
    let missing = run(&["decompose", "--kind", "ggb", "--in", "/nonexistent/state.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/state.json"));
}

#[test]
fn non_hermitian_input_is_a_contract_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, r#"{"dim":2,"re":[[1,1],[0,0]],"im":[[0,0],[0,0]]}"#).unwrap();
    let out = run(&["decompose", "--kind", "wob", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Hermitian"));
}

#[test]
fn selftest_prints_a_passing_table() {
    let out = run(&["selftest", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 6);
    assert!(!text.contains("FAIL"));
}
