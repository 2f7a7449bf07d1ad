use std::path::PathBuf;
use std::process::{Command, Output};

fn segal(args: &[&str]) -> Output {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    Command::new(env!("CARGO_BIN_EXE_segal"))
        .current_dir(root)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    segal(args).status.code().expect("exit code")
}

#[test]
fn exit_codes_follow_the_verdict() {
    assert_eq!(code(&["verify", "--check", "tau1-product", "1", "1"]), 0);
    assert_eq!(code(&["verify", "--check", "complete-1trunc", "box:NI[1]:D0"]), 1);
    assert_eq!(code(&["--dim", "1", "--window", "2", "2", "tshriek", "N[1]"]), 2);
    assert_eq!(code(&["verify", "--check", "no-such-check", "x"]), 3);
    assert_eq!(code(&["tau1", "data/missing_face.sset"]), 3);
}

#[test]
fn fundamental_category_of_a_file() {
    let out = segal(&["tau1", "data/horn.sset"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("3 objects, 6 morphisms"), "{text}");
}

#[test]
fn structured_reports_are_reproducible() {
    let args = ["--format", "structured", "verify", "--config", "data/suite.json"];
    let (a, b) = (segal(&args), segal(&args));
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["passed"], 3);
    assert_eq!(report["failed"], 1);
    assert!(report["results"][0].get("wall_time_ms").is_none());
}
