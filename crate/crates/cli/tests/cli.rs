//! Exit-code and report-shape checks for the `grdt` binary.

use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grdt-cli-{}-{}", tag, std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn grdt(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_grdt"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn group_info_reports_kernels() {
    let dir = workdir("gi");
    let group = dir.join("c3c3.json");
    std::fs::write(&group, r#"{"abelian": [3, 3], "name": "C3xC3"}"#).unwrap();
    let out = dir.join("report.json");
    let r = grdt(&[
        "group-info",
        group.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["report"]["order"], 9);
    assert_eq!(
        report["report"]["character_kernels"].as_array().unwrap().len(),
        5
    );
    // the trivial subgroup appears as a kernel for a cyclic group
    let c9 = dir.join("c9.json");
    std::fs::write(&c9, r#"{"abelian": [9], "name": "C9"}"#).unwrap();
    let out9 = dir.join("report9.json");
    let r = grdt(&["group-info", c9.to_str().unwrap(), "--out", out9.to_str().unwrap()]);
    assert!(r.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(&out9).unwrap()).unwrap();
    assert!(report["report"]["character_kernels"]
        .as_array()
        .unwrap()
        .iter()
        .any(|k| k.as_array().unwrap() == &vec![Value::from(0)]));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn malformed_input_exits_2() {
    let dir = workdir("bad");
    let group = dir.join("bad.json");
    std::fs::write(&group, r#"{"order": 3, "mul": [[0]]}"#).unwrap();
    let r = grdt(&["group-info", group.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    // missing file is also an input error
    let r = grdt(&["dt", dir.join("nope.json").to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn even_order_exits_2() {
    let dir = workdir("even");
    let group = dir.join("c2.json");
    std::fs::write(&group, r#"{"abelian": [2], "name": "C2"}"#).unwrap();
    let r = grdt(&["chartable", group.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn precision_exhaustion_exits_3() {
    let dir = workdir("cap");
    let group = dir.join("c9.json");
    std::fs::write(&group, r#"{"abelian": [9], "name": "C9"}"#).unwrap();
    let r = grdt(&["dt", group.to_str().unwrap(), "--precision-cap", "2"]);
    assert_eq!(r.status.code(), Some(3));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn chartable_heisenberg_has_11_irreducibles() {
    let dir = workdir("ct");
    let group = dir.join("he27.json");
    std::fs::write(&group, r#"{"builtin": "heisenberg-27"}"#).unwrap();
    let out = dir.join("report.json");
    let r = grdt(&[
        "chartable",
        group.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let irr = report["report"]["irreducibles"].as_array().unwrap();
    assert_eq!(irr.len(), 11);
    let deg3 = irr.iter().filter(|c| c["degree"] == 3).count();
    assert_eq!(deg3, 2);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cfrak_local_reports_annihilation() {
    let dir = workdir("cf");
    let local = dir.join("local.json");
    std::fs::write(
        &local,
        r#"{"group": {"abelian": [9], "name": "C9"},
            "inertia": [0,3,6], "ram1": [0,3,6], "ram2": [0],
            "frobenius": 1, "residue_char": 3}"#,
    )
    .unwrap();
    let out = dir.join("report.json");
    let r = grdt(&["cfrak", local.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(r.status.success());
    let report: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["report"]["annihilation_exponent"], 3);
    assert_eq!(report["report"]["closed_form_agreement"], true);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn default_output_name_is_config_hash() {
    let dir = workdir("hash");
    let group = dir.join("c3.json");
    std::fs::write(&group, r#"{"abelian": [3], "name": "C3"}"#).unwrap();
    let r = Command::new(env!("CARGO_BIN_EXE_grdt"))
        .current_dir(&dir)
        .args(["dt", "c3.json"])
        .output()
        .unwrap();
    assert!(r.status.success());
    let written: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            name.starts_with("grdt-").then_some(name)
        })
        .collect();
    assert_eq!(written.len(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}
