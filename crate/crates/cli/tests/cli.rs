use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lrows(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrows"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn load(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn schema(name: &str) -> Value {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schema", "v1", name].iter().collect();
    load(&p)
}

/// Every key the schema lists as required is present, and the schema tag matches.
fn assert_conforms(v: &Value, schema_file: &str) {
    let s = schema(schema_file);
    for key in s["required"].as_array().unwrap() {
        let key = key.as_str().unwrap();
        assert!(v.get(key).is_some(), "{schema_file}: missing {key} in {v}");
    }
    if let Some(tag) = s["properties"]["schema"].get("const") {
        assert_eq!(&v["schema"], tag);
    }
}

fn gen(dir: &Path, out: &str, r: &str, base: &str, seed: &str) {
    let o = lrows(&["gen-row", "--r", r, "--base", base, "--seed", seed, "--steps", "5", "--out", out], dir);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn gen_reduce_verify_round_trip() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "row.json", "2", "Z_(3)", "11");
    let o = lrows(&["reduce", "--in", "row.json", "--precision", "64", "--out", "res.json"], d.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = lrows(&["reduce", "--in", "res.json", "--verify-only"], d.path());
    assert_eq!(code(&o), 0);

    assert_conforms(&load(&d.path().join("row.json")), "RowBundle.json");
    assert_conforms(&load(&d.path().join("res.json")), "ReductionResult.json");
    for f in ["row.json.manifest.json", "res.json.manifest.json"] {
        let m = load(&d.path().join(f));
        assert_conforms(&m, "RunManifest.json");
    }
    let m = load(&d.path().join("row.json.manifest.json"));
    assert_eq!(m["seed"], 11);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let d = TempDir::new().unwrap();
    for out in ["a.json", "b.json"] {
        gen(d.path(), out, "3", "F5", "99");
    }
    let a = std::fs::read(d.path().join("a.json")).unwrap();
    let b = std::fs::read(d.path().join("b.json")).unwrap();
    assert_eq!(a, b);
    for (src, out) in [("a.json", "ra.json"), ("a.json", "rb.json")] {
        let o = lrows(&["reduce", "--in", src, "--out", out], d.path());
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(d.path().join("ra.json")).unwrap(), std::fs::read(d.path().join("rb.json")).unwrap());
}

#[test]
fn trivial_bundle_reduces_to_t_one_zero() {
    let d = TempDir::new().unwrap();
    std::fs::write(
        d.path().join("triv.json"),
        r#"{"base":"Q","row":[{"0":"1"},{},{}],"complement":[{"0":"1"},{},{}],"unit":{"coeff":"1","exp":0}}"#,
    )
    .unwrap();
    let o = lrows(&["reduce", "--in", "triv.json", "--out", "out.json"], d.path());
    assert_eq!(code(&o), 0);
    let p = &load(&d.path().join("out.json"))["weierstrass_row"];
    assert_eq!(p, &serde_json::json!([{"1": "1/1"}, {"0": "1/1"}, {}]));
}

#[test]
fn tampered_certificate_exits_3() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "row.json", "2", "Q", "5");
    assert_eq!(code(&lrows(&["reduce", "--in", "row.json", "--out", "res.json"], d.path())), 0);
    let mut res = load(&d.path().join("res.json"));
    res["certificate"]["cofactors"][0] = serde_json::json!({"0": "7/1"});
    std::fs::write(d.path().join("bad.json"), res.to_string()).unwrap();
    assert_eq!(code(&lrows(&["reduce", "--in", "bad.json", "--verify-only"], d.path())), 3);
}

#[test]
fn non_unimodular_input_exits_3() {
    let d = TempDir::new().unwrap();
    std::fs::write(
        d.path().join("bad.json"),
        r#"{"base":"Q","row":[{"1":"1"},{"2":"1"},{}],"complement":[{"0":"1"},{},{}],"unit":{"coeff":"1","exp":0}}"#,
    )
    .unwrap();
    assert_eq!(code(&lrows(&["reduce", "--in", "bad.json", "--out", "o.json"], d.path())), 3);
}

#[test]
fn low_precision_exits_4() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "row.json", "2", "Q", "1");
    let o = lrows(&["reduce", "--in", "row.json", "--precision", "4", "--out", "o.json"], d.path());
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("precision"));
}

#[test]
fn usage_errors_exit_2() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&lrows(&["check", "--claim", "nonsense"], d.path())), 2);
    assert_eq!(code(&lrows(&["gen-row", "--r", "2", "--base", "F4", "--out", "x.json"], d.path())), 2);
    assert_eq!(code(&lrows(&["reduce", "--in", "x.json"], d.path())), 2);
    assert_eq!(code(&lrows(&["check", "--claim", "universal-map"], d.path())), 2);
}

fn check(args: &[&str], dir: &Path) -> (i32, Value) {
    let mut full = vec!["check"];
    full.extend_from_slice(args);
    let o = lrows(&full, dir);
    let v = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (code(&o), v)
}

#[test]
fn regseq_small_instance_passes() {
    let d = TempDir::new().unwrap();
    let (c, v) = check(&["--claim", "regseq", "--r", "2", "--k", "1", "--n", "2", "--base", "Q"], d.path());
    assert_eq!(c, 0);
    assert_conforms(&v, "Report.json");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["witness"]["observed"], serde_json::json!([1, 18, 169, 1104]));
}

#[test]
fn quotient_method_over_f2_with_jobs() {
    let d = TempDir::new().unwrap();
    let (c, v) = check(
        &["--claim", "regseq", "--k", "0,1,2", "--n", "1", "--base", "Q,F2", "--method", "quotient", "--jobs", "2"],
        d.path(),
    );
    assert_eq!(c, 0);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn irreducible_default_is_case_one() {
    let d = TempDir::new().unwrap();
    let (c, v) = check(&["--claim", "irreducible", "--ell", "0"], d.path());
    assert_eq!(c, 0);
    assert_eq!(v["witness"]["case"], 1);
}

#[test]
fn tiny_budget_times_out() {
    let d = TempDir::new().unwrap();
    let (c, v) = check(&["--claim", "regseq", "--k", "0", "--n", "2", "--method", "quotient", "--pair-budget", "1"], d.path());
    assert_eq!(c, 5);
    assert_eq!(v["verdict"], "timeout");
}

#[test]
fn grading_of_written_presentation() {
    let d = TempDir::new().unwrap();
    let o = lrows(&["build-presentation", "--r", "2", "--k", "1", "--n", "2", "--out", "p.json"], d.path());
    assert_eq!(code(&o), 0);
    assert_conforms(&load(&d.path().join("p.json")), "RingPresentation.json");
    let (c, v) = check(&["--claim", "grading", "--in", "p.json", "--out", "rep.json"], d.path());
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], "pass");
    assert_conforms(&load(&d.path().join("rep.json.manifest.json")), "RunManifest.json");
}

#[test]
fn universal_map_from_reduction() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "row.json", "2", "F5", "3");
    assert_eq!(code(&lrows(&["reduce", "--in", "row.json", "--out", "res.json"], d.path())), 0);
    let (c, v) = check(&["--claim", "universal-map", "--in", "res.json"], d.path());
    assert_eq!(c, 0, "{v}");
    assert!(v["witness"]["stabilization_index"].as_u64().is_some());
}

#[test]
fn complete2_has_unit_determinant() {
    let d = TempDir::new().unwrap();
    gen(d.path(), "row.json", "1", "Z_(2)", "8");
    assert_eq!(code(&lrows(&["complete2", "--in", "row.json", "--out", "m.json"], d.path())), 0);
    let m = load(&d.path().join("m.json"));
    assert_conforms(&m, "Completion.json");
    assert_eq!(m["determinant"], serde_json::json!({"0": "1/1"}));
}
