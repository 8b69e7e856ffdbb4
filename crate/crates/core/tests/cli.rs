//! End-to-end runs of the command-line binary and its exit codes.

use std::path::Path;
use std::process::Command;

fn genus2(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_genus2")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_verify_export_member_dim() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("m32.scene");
    let report = dir.path().join("report.txt");
    let obj = dir.path().join("level1.obj");

    let (code, _) = genus2(&["build", "--R", "1", "--r", "0.08", "--m", "32", "--out", p(&scene)]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&scene).unwrap().starts_with("genus2-scene v1\n"));

    // containment fails at m = 32
    let (code, _) = genus2(&["verify", "--scene", p(&scene), "--depth", "1", "--report", p(&report)]);
    assert_eq!(code, 1);
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("check chain.contained FAIL"));
    assert!(text.contains("check chain.consecutive_hopf PASS"));

    let (code, _) = genus2(&[
        "verify", "--scene", p(&scene), "--depth", "1", "--skip", "containment", "--report", p(&report),
    ]);
    assert_eq!(code, 0);

    let (code, out) = genus2(&["export", "--scene", p(&scene), "--level", "1", "--out", p(&obj)]);
    assert_eq!(code, 0, "{out}");
    let mesh = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(mesh.lines().filter(|l| l.starts_with("v ")).count(), 2048);
    assert_eq!(mesh.lines().filter(|l| l.starts_with("g ")).count(), 32);

    let (code, out) = genus2(&["member", "--scene", p(&scene), "--point", "1.4142135623730951,0,0", "--depth", "12"]);
    assert_eq!((code, out.trim()), (0, "escaped_at 0"));

    let (code, out) = genus2(&["dim", "--m", "32"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1.62076"));
}

#[test]
fn fourway_exit_codes() {
    assert_eq!(genus2(&["fourway", "--R", "1", "--r", "0.08"]).0, 0);
    assert_eq!(genus2(&["fourway", "--R", "1", "--r", "0.1"]).0, 1);
    assert_eq!(genus2(&["fourway", "--R", "1", "--r", "2"]).0, 2);
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.scene");
    assert_eq!(genus2(&["build", "--R", "1", "--r", "0.08", "--m", "24", "--out", p(&out)]).0, 2);
    assert_eq!(genus2(&["build", "--R", "1", "--r", "0.12", "--m", "32", "--out", p(&out)]).0, 2);
    std::fs::write(&out, "genus2-scene v2\n").unwrap();
    let report = dir.path().join("r.txt");
    assert_eq!(genus2(&["verify", "--scene", p(&out), "--depth", "1", "--report", p(&report)]).0, 2);
    assert_eq!(genus2(&["member", "--scene", p(&out), "--point", "1,2", "--depth", "1"]).0, 2);
}

#[test]
fn literal_rho1_center_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("lit.scene");
    let report = dir.path().join("r.txt");
    let args = ["build", "--R", "1", "--r", "0.08", "--m", "32", "--rho1-center", "literal", "--out", p(&scene)];
    assert_eq!(genus2(&args).0, 0);
    let (code, _) = genus2(&[
        "verify", "--scene", p(&scene), "--depth", "1", "--skip", "containment,disks", "--report", p(&report),
    ]);
    assert_eq!(code, 1);
    assert!(std::fs::read_to_string(&report).unwrap().contains("check chain.consecutive_hopf FAIL"));
}
