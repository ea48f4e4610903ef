use std::path::PathBuf;
use std::process::{Command, Output};

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances").join(name)
}

fn qcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat")).args(args).env_remove("QCAT_FIELD").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn check(v: &serde_json::Value, name: &str) -> String {
    v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name} in {v}"))["status"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn sample_instances_validate() {
    for name in [
        "arrow_hom.json",
        "discrete2_hom.json",
        "z2_bialgebroid.json",
        "z2_regular_comodule.json",
        "z4_over_z2_comodule.json",
        "m2_frobenius.json",
        "z2_weak_bialgebra.json",
        "indiscrete2_weak_bialgebra.json",
        "k2_regular_k2.json",
    ] {
        let out = qcat(&["validate", instance(name).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn nonassociative_algebra_names_the_triple() {
    let out = qcat(&["validate", instance("nonassociative_algebra.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[FAIL] associativity") && text.contains("(1,1,1)"), "{text}");
}

#[test]
fn unreadable_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&qcat(&["validate", empty.to_str().unwrap()])), 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"algebra","payload":{"dim":2,"unit":["1","0"],"mult":[[0,0]]}}"#).unwrap();
    let out = qcat(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("payload.mult[0]"));

    assert_eq!(code(&qcat(&["validate", dir.path().join("missing.json").to_str().unwrap()])), 2);
    assert_eq!(code(&qcat(&["frobnicate"])), 2);
}

#[test]
fn hom_composite_reports_unit_laws() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("c.json");
    let h = instance("arrow_hom.json");
    let out = qcat(&["--json", "compose", "-a", h.to_str().unwrap(), "-b", h.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(check(&v, "unit_law.left"), "pass");
    assert_eq!(check(&v, "unit_law.right"), "pass");
    assert_eq!(v["stats"]["dim_composite"], 3);
    assert_eq!(code(&qcat(&["validate", out_path.to_str().unwrap()])), 0);
}

#[test]
fn discrete_composite_is_discrete() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("c.json");
    let d = instance("discrete2_hom.json");
    let v = json(&qcat(&["--json", "compose", "-a", d.to_str().unwrap(), "-b", d.to_str().unwrap(), "-o", out_path.to_str().unwrap()]));
    assert_eq!(v["stats"]["dim_composite"], 2);
    assert_eq!(v["stats"]["composable_pairs"], 2);
}

#[test]
fn group_comodules_compose() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("c.json");
    let a = instance("z2_regular_comodule.json");
    let b = instance("z4_over_z2_comodule.json");
    let out = qcat(&["--json", "compose", "-a", a.to_str().unwrap(), "-b", b.to_str().unwrap(), "-o", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    // base k: M ⊗_k N
    assert_eq!(v["stats"]["dim_pair"], 8);
    assert_eq!(check(&v, "composite.coassociativity"), "pass");
    assert_eq!(code(&qcat(&["validate", out_path.to_str().unwrap()])), 0);
}

#[test]
fn mismatched_kinds_do_not_compose() {
    let out = qcat(&["compose", "-a", instance("arrow_hom.json").to_str().unwrap(), "-b", instance("z2_regular_comodule.json").to_str().unwrap(), "-o", "/dev/null"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn beta_over_split_bases() {
    let a = instance("k2_regular_k.json");
    let b = instance("k_regular_k2.json");
    let c = instance("k2_regular_k2.json");
    let v = json(&qcat(&["--json", "beta", "-p", "1+1", a.to_str().unwrap(), b.to_str().unwrap()]));
    assert_eq!(check(&v, "iso"), "pass");
    let out = qcat(&["--json", "beta", "-p", "2+1", c.to_str().unwrap(), c.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["stats"]["verdict"], "iso");
}

#[test]
fn beta_rejects_zero_parts_and_arity_mismatch() {
    let c = instance("k2_regular_k2.json");
    let out = qcat(&["beta", "-p", "0+2", c.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("m_i > 0"));
    assert_eq!(code(&qcat(&["beta", "-p", "1+1", c.to_str().unwrap()])), 2);
    assert_eq!(code(&qcat(&["beta", "-p", "1", instance("arrow_hom.json").to_str().unwrap()])), 2);
}

#[test]
fn campaigns() {
    let out = qcat(&["--json", "campaign", "--suite", "set", "--trials", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["stats"]["trials"], 0);
    let out = qcat(&["campaign", "--suite", "nope"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("takeuchi"));
    let a = qcat(&["--json", "campaign", "--suite", "bridge", "--seed", "3", "--trials", "4"]);
    let b = qcat(&["--json", "campaign", "--suite", "bridge", "--seed", "3", "--trials", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn field_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    // 1·1 = 3 is unital only when 3 = 1
    std::fs::write(&path, r#"{"kind":"algebra","payload":{"dim":1,"unit":["1"],"mult":[[0,0,0,"3"]]}}"#).unwrap();
    let run = |field: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qcat"));
        cmd.args(["validate", path.to_str().unwrap()]).env_remove("QCAT_FIELD");
        if let Some(f) = field {
            cmd.env("QCAT_FIELD", f);
        }
        code(&cmd.output().unwrap())
    };
    assert_eq!(run(None), 1);
    assert_eq!(run(Some("2")), 0);
    assert_eq!(run(Some("5")), 1);
    assert_eq!(run(Some("not-a-field")), 2);
}
