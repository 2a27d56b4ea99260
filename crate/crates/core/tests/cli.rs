//! End-to-end checks of the command-line interface: exit codes, report
//! determinism, and input rejection.

use std::path::Path;
use std::process::{Command, Output};

use segal_core::build::{circle, delta};
use segal_core::group::FiniteGroup;
use segal_core::io::{group_to_json, gspace_to_json, sset_to_json, RefJson};
use segal_core::gspace::trivial_action;
use segal_core::group::SimplicialGroup;

fn segal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

fn write(dir: &Path, name: &str, value: &impl serde::Serialize) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn build_circle_reports_counts_and_exits_zero() {
    let out = segal(&["build", "circle", "--truncation", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["payload"]["counts"], serde_json::json!([1, 1, 0]));
}

#[test]
fn homology_of_the_circle_is_free_of_rank_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "circle.json", &sset_to_json(&circle(2).unwrap()));
    let out = segal(&["homology", &path]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out)["payload"]["homology"].clone();
    assert_eq!(rows[0]["rank"], 1);
    assert_eq!(rows[1]["rank"], 1);
    assert_eq!(rows[1]["torsion"], serde_json::json!([]));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "circle.json", &sset_to_json(&circle(3).unwrap()));
    let a = segal(&["kan", &path, "--up-to", "2"]);
    let b = segal(&["kan", &path, "--up-to", "2"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "circle.json", &sset_to_json(&circle(2).unwrap()));
    let report = dir.path().join("out.json");
    let out = segal(&["homology", &path, "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&report).unwrap(), out.stdout);
}

#[test]
fn malformed_json_is_rejected_with_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = segal(&["homology", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let r = stdout_json(&out);
    assert!(r["payload"]["error"].as_str().unwrap().contains("broken.json"));
}

#[test]
fn face_identity_violation_names_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let mut j = sset_to_json(&delta(2, 2).unwrap());
    j.faces.get_mut("012").unwrap()[0] = RefJson { s: vec![], g: "01".into() };
    let path = write(dir.path(), "bad.json", &j);
    let out = segal(&["homology", &path]);
    assert_eq!(out.status.code(), Some(3));
    let r = stdout_json(&out);
    assert!(r["payload"]["error"].as_str().unwrap().contains("012"));
}

#[test]
fn non_associative_group_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "nogroup.json",
        &serde_json::json!({ "elements": ["e", "a"], "table": [[0, 1], [1, 1]] }),
    );
    let out = segal(&["build", "bar", &path, "--truncation", "2", "--up-to", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_segal_group_on_the_bar_of_z2_is_certified() {
    let dir = tempfile::tempdir().unwrap();
    let gpath = write(dir.path(), "z2.json", &group_to_json(&FiniteGroup::cyclic(2)));
    let built = segal(&["build", "bar", &gpath, "--truncation", "3", "--up-to", "2"]);
    assert_eq!(built.status.code(), Some(0));
    let space = stdout_json(&built)["payload"]["space"].clone();
    let spath = dir.path().join("bar_z2.json");
    std::fs::write(&spath, serde_json::to_string(&space).unwrap()).unwrap();
    let out = segal(&["check-segal-group", spath.to_str().unwrap(), "--up-to", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "CERTIFIED");
}

#[test]
fn unknown_command_and_unknown_build_target_exit_three() {
    assert_eq!(segal(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(segal(&["build", "moebius"]).status.code(), Some(3));
}

#[test]
fn pi1_of_the_circle_has_one_free_generator() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "circle.json", &sset_to_json(&circle(2).unwrap()));
    let out = segal(&["pi1", &path]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["payload"]["abelianization"]["rank"], 1);
    assert_eq!(r["payload"]["order"], serde_json::Value::Null);
}

#[test]
fn roundtrip_of_a_trivial_point_action_is_certified() {
    let dir = tempfile::tempdir().unwrap();
    let grp = FiniteGroup::cyclic(2);
    let sg = SimplicialGroup::constant(&grp, 3);
    let xg = trivial_action(&segal_core::build::point(3), &sg).unwrap();
    let path = write(dir.path(), "pt_z2.json", &gspace_to_json(&xg).unwrap());
    let out = segal(&["roundtrip", &path, "--up-to", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["verdict"], "CERTIFIED");
}

#[test]
fn timing_goes_to_stderr_not_into_the_report() {
    let out = segal(&["build", "circle", "--truncation", "1"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("finished in"));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("finished in"));
}

#[test]
fn audit_functor_identity_is_certified() {
    let out = segal(&["audit-functor", "identity", "--truncation", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["verdict"], "CERTIFIED");
}

#[test]
fn missing_input_file_is_reported() {
    let out = segal(&["homology", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(3));
}
