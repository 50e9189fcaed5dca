use std::path::Path;
use std::process::{Command, Output};

fn bolkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bolkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn construct(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.loop"));
    let p = path.to_str().unwrap();
    stdout(&bolkit(&["construct", name, "-o", p]));
    p.to_string()
}

#[test]
fn construct_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = construct(dir.path(), "B1");
    let out = stdout(&bolkit(&["validate", &b1]));
    assert!(out.contains("order 27"), "{out}");
    assert!(out.contains("right Bol yes"), "{out}");
    assert!(out.contains("associative no"), "{out}");
}

#[test]
fn unknown_name_is_an_error() {
    let out = bolkit(&["construct", "B11"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn malformed_file_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.loop");
    std::fs::write(&path, "2\n0 1\n1 1\n").unwrap();
    let out = bolkit(&["validate", path.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn profile_json_fields() {
    let dir = tempfile::tempdir().unwrap();
    let b9 = construct(dir.path(), "B9");
    let out = stdout(&bolkit(&["profile", &b9, "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["center_order"], 1);
    assert_eq!(v["derived_order"], 9);
    assert_eq!(v["commuting_pairs"], 153);
    assert_eq!(v["aut_order"], 72);
    assert_eq!(v["associated_bruck"], "Z3^3");
}

#[test]
fn classify_groups_copies() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct(dir.path(), "B2");
    let b = construct(dir.path(), "B6");
    let copy = dir.path().join("copy.loop");
    std::fs::copy(&a, &copy).unwrap();
    let out = stdout(&bolkit(&["classify", &a, &b, copy.to_str().unwrap(), "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn isotopy_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let b9 = construct(dir.path(), "B9");
    let b10 = construct(dir.path(), "B10");
    let b1 = construct(dir.path(), "B1");
    let yes: serde_json::Value =
        serde_json::from_str(&stdout(&bolkit(&["isotopy", &b9, &b10, "--json"]))).unwrap();
    assert_eq!(yes["isotopic"], true);
    let no: serde_json::Value =
        serde_json::from_str(&stdout(&bolkit(&["isotopy", &b1, &b9, "--json"]))).unwrap();
    assert_eq!(no["isotopic"], false);
}

#[test]
fn central_extension_search_emits_loops() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("ext");
    let out = stdout(&bolkit(&[
        "search",
        "central-ext",
        "--p",
        "3",
        "--json",
        "--emit-dir",
        emit.to_str().unwrap(),
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classes"], 12);
    assert_eq!(v["associative"], 4);
    assert_eq!(std::fs::read_dir(&emit).unwrap().count(), 12);
}

#[test]
fn trivial_center_search_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("cyc.json");
    let args = [
        "search",
        "trivial-center",
        "--case",
        "cyc",
        "--json",
        "--resume",
        ckpt.to_str().unwrap(),
    ];
    let first: serde_json::Value = serde_json::from_str(&stdout(&bolkit(&args))).unwrap();
    let second: serde_json::Value = serde_json::from_str(&stdout(&bolkit(&args))).unwrap();
    assert_eq!(first["classes"], second["classes"]);
    assert_eq!(first["models"], second["models"]);
}

#[test]
fn table2_groups() {
    let out = stdout(&bolkit(&["table2", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["groups"].as_array().unwrap().len(), 5);
}

#[test]
fn classify_all_census() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("all");
    let out = stdout(&bolkit(&["classify-all", "--json", "--emit-dir", emit.to_str().unwrap()]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 15);
    assert_eq!(v["associative"], 5);
    assert_eq!(v["abelian"], 3);
    assert_eq!(v["centrally_nilpotent"], 13);
    assert_eq!(v["trivial_center"], 2);
    assert_eq!(std::fs::read_dir(&emit).unwrap().count(), 15);
}
