use std::process::{Command, Output};

use serde_json::Value;

fn tidlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tidlab"))
        .args(args)
        .env_remove("TIDLAB_SEED")
        .output()
        .expect("run tidlab")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = tidlab(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn check<'a>(report: &'a Value, name: &str, backend: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == name && c["backend"] == backend)
        .unwrap_or_else(|| panic!("no {name}/{backend} check"))
}

#[test]
fn phi4_hundred_seeds() {
    let (code, r) = json(&["verify", "phi4", "--dim", "3", "--seeds", "1..100", "--mode", "numeric", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "tidlab/1");
    let c = check(&r, "phi4", "numeric");
    assert!(c["residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(c["parameters"]["seeds"], 100);
}

#[test]
fn identity18_symbolic() {
    let (code, r) = json(&["verify", "identity18", "--mode", "symbolic", "--json"]);
    assert_eq!(code, 0);
    let d = &check(&r, "identity18", "symbolic")["details"]["cube_roots"];
    assert_eq!(d["instances"], 1440);
    assert_eq!(d["distinct_high"], 120);
    assert_eq!(d["distinct_low"], 120);
    assert_eq!(d["occurrences_per_word"], 6);
    assert!(d["forms"].as_array().unwrap().iter().all(|f| f["zero_at_cube_roots"] == true));
}

#[test]
fn classical_jacobi_with_explicit_weights() {
    let (code, r) = json(&["verify", "jacobi", "--alpha", "1", "--beta", "-1", "--gamma", "0", "--delta", "0", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(r["config"]["weights"], "explicit");
    let (code, _) = json(&["verify", "jacobi", "--alpha", "1", "--beta", "0.5", "--mode", "numeric", "--json"]);
    assert_eq!(code, 1);
}

#[test]
fn enumerate_counts() {
    for (args, n) in [
        (vec!["enumerate", "(1,1)x(1,1)", "--json"], 7),
        (vec!["enumerate", "(2,1)x(2,1)x(1,2)", "--no-self", "--out", "(2,1)", "--json"], 7),
        (vec!["enumerate", "(1,2)x(1,2)x(2,1)", "--no-self", "--out", "(1,2)", "--json"], 7),
        (vec!["enumerate", "(1,1)", "--json"], 2),
    ] {
        let (code, r) = json(&args);
        assert_eq!(code, 0);
        assert_eq!(r["count"], n, "{args:?}");
    }
    let (_, r) = json(&["enumerate", "(1,1)x(1,1)", "--json"]);
    assert_eq!(r["histogram"]["(1,1)"], 4);
    assert_eq!(r["histogram"]["(0,0)"], 2);
    assert_eq!(r["histogram"]["(2,2)"], 1);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "all", "--seeds", "1..3", "--dim", "2", "--json"];
    let (a, b) = (tidlab(&args), tidlab(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    let names: Vec<String> = r["checks"].as_array().unwrap().iter().map(|c| c["check"].as_str().unwrap().to_string()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(r["checks"][0].get("elapsed_ms").is_none());
}

#[test]
fn seed_falls_back_to_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tidlab"))
        .args(["verify", "jacobi", "--mode", "numeric", "--json"])
        .env("TIDLAB_SEED", "42")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["config"]["seeds"], serde_json::json!([42]));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "nothing"],
        vec!["verify", "jacobi", "--dim", "0"],
        vec!["verify", "jacobi", "--seeds", "9..1"],
        vec!["verify", "jacobi", "--alpha", "one"],
        vec!["verify", "jacobi", "--tol", "-1"],
        vec!["verify", "cyclic16", "--convention", "/no/such/file.json"],
        vec!["enumerate", "(1,1)x(1"],
        vec!["frobnicate"],
    ] {
        assert_eq!(tidlab(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn weights_outside_the_family_fail() {
    let (code, r) = json(&["verify", "identity18", "--weights", "random-constrained", "--seeds", "1..2", "--dim", "2", "--mode", "numeric", "--json"]);
    assert_eq!(code, 1);
    assert!(check(&r, "identity18", "numeric")["residual"].as_f64().unwrap() > 1e-6);
    let (code, _) = json(&["verify", "cyclic16", "--weights", "random-constrained", "--seeds", "1..2", "--dim", "2", "--json"]);
    assert_eq!(code, 0);
}

#[test]
fn convention_search_round_trip() {
    let dir = std::env::temp_dir().join(format!("tidlab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("convention.json");
    let p = path.to_str().unwrap();
    let (code, search) = json(&["convention-search", "--out", p, "--json"]);
    assert_eq!(code, 0);
    let selected = &search["selected"];
    assert!(search["survivors"].as_array().unwrap().iter().any(|s| s["cyclic16"].as_f64().unwrap() <= 1e-10));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(&written, selected);

    let (code, forced) = json(&["convention-search", "--force", p, "--json"]);
    assert_eq!(code, 0);
    let listed = search["survivors"].as_array().unwrap().iter().find(|s| &s["convention"] == selected).unwrap();
    assert_eq!(forced["cyclic16"], listed["cyclic16"]);
    assert_eq!(forced["identity18"], listed["identity18"]);

    let (code, control) = json(&["convention-search", "--force", "class-representatives", "--json"]);
    assert_eq!(code, 1);
    assert!(control["identity18"].as_f64().unwrap() > 1e-6);

    let (code, r) = json(&["verify", "identity18", "--convention", p, "--seeds", "1", "--mode", "numeric", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(&r["convention"], selected);
    std::fs::remove_dir_all(&dir).ok();
}
