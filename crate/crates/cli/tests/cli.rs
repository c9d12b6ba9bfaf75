use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fiberq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fiberq"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    fiberq().args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fiberq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes_follow_verdicts() {
    for (file, code) in [("pass.json", 0), ("fail.json", 1), ("bad_version.json", 2)] {
        let out = run(&["check", fixture(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{file}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(run(&["check", "/nonexistent/problems.json"]).status.code(), Some(2));
}

#[test]
fn text_report_has_one_line_per_problem() {
    let out = run(&["check", fixture("pass.json").to_str().unwrap(), "--report", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn reads_standard_input() {
    let mut child = fiberq()
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"version":"1","problems":[]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "[]\n");
}

#[test]
fn catalog_export_round_trip_is_byte_identical() {
    let exported = scratch("catalog.json");
    let out = run(&["catalog", "export", "--out", exported.to_str().unwrap()]);
    assert!(out.status.success());
    let first = run(&["check", exported.to_str().unwrap()]);
    let second = run(&["check", exported.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(first.stdout, second.stdout);
    let listing = String::from_utf8(run(&["catalog", "list"]).stdout).unwrap();
    assert!(listing.contains("planar-y-dx-at-0-1"));
}

#[test]
fn ruth_constructions_write_verified_files() {
    let input = fixture("pass.json");
    let input = input.to_str().unwrap();
    let dual = scratch("dual.json");
    assert!(run(&["ruth", "dual", input, "--out", dual.to_str().unwrap()]).status.success());
    let verified = run(&["ruth", "verify", dual.to_str().unwrap()]);
    assert_eq!(verified.status.code(), Some(0));
    assert!(String::from_utf8(verified.stdout).unwrap().starts_with("PASS ruth"));

    let tdual = scratch("tdual.json");
    let out = run(&["ruth", "tdual", input, "--with", input, "--out", tdual.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let lift = scratch("lift.json");
    std::fs::write(&lift, r#"{"g1": [[0]]}"#).unwrap();
    let out = run(&["ruth", "roundtrip", input, "--lift", lift.to_str().unwrap()]);
    assert!(!out.status.success(), "a one-term representation has no semidirect product");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_command_prints_cone_dimensions() {
    let out = run(&["cohomology", fixture("fail.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "all zero: {-1:1,0:2,1:2,2:1}\n");
}
