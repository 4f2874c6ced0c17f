//! End-to-end smoke tests of the `qsober` binary: exit codes, report
//! files, cap handling and determinism. These run the real executable
//! via `CARGO_BIN_EXE_qsober`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qsober"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn godel3(dir: &Path) -> PathBuf {
    write(dir, "godel3.json", r#"{"standard": "godel", "n": 3}"#)
}

fn sierpinski(dir: &Path) -> PathBuf {
    write(
        dir,
        "sierpinski.json",
        r#"{"points": ["x", "y"], "subbasis": [["1", "0"]], "mode": "stratified"}"#,
    )
}

#[test]
fn validate_quantale_accepts_standard_and_explicit_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["validate-quantale", "-q"]).arg(godel3(dir.path())).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("quantale OK: 3 elements"));

    let explicit = write(
        dir.path(),
        "two.json",
        r#"{"labels": ["0", "1"], "leq": [[1, 1], [0, 1]], "tensor": [[0, 0], [0, 1]]}"#,
    );
    let out = bin().args(["validate-quantale", "-q"]).arg(&explicit).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("linear: yes; double negation: yes"));
}

#[test]
fn malformed_input_exits_two_with_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"standard": "godel", "n": }"#);
    let out = bin().args(["validate-quantale", "-q"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.json"), "{}", stderr(&out));

    let lawless = write(
        dir.path(),
        "lawless.json",
        r#"{"labels": ["0", "1"], "leq": [[1, 1], [0, 1]], "tensor": [[0, 1], [0, 1]]}"#,
    );
    let out = bin().args(["validate-quantale", "-q"]).arg(&lawless).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tensor.commutative"), "{}", stderr(&out));
}

#[test]
fn generate_writes_a_parseable_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = bin()
        .args(["generate", "-q"])
        .arg(godel3(dir.path()))
        .arg("-s")
        .arg(sierpinski(dir.path()))
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["mode"], "stratified");
    assert_eq!(doc["points"], serde_json::json!(["x", "y"]));
    assert_eq!(doc["size"].as_u64().unwrap() as usize, doc["closed"].as_array().unwrap().len());
}

#[test]
fn check_sober_reports_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("sober.json");
    let out = bin()
        .args(["check-sober", "-q"])
        .arg(godel3(dir.path()))
        .arg("-s")
        .arg(sierpinski(dir.path()))
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verdict: sober"));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["verdict"], "sober");
    assert_eq!(doc["stratified"], true);
}

#[test]
fn scenario_listing_and_named_runs_succeed() {
    let out = bin().args(["scenario", "--list"]).output().unwrap();
    assert!(out.status.success());
    let listing = stdout(&out);
    assert!(listing.contains("boolean4-discrete-not-sober"));
    assert!(listing.lines().count() >= 8);

    let out = bin().args(["scenario", "boolean4-discrete-not-sober"]).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("scenario boolean4-discrete-not-sober: ok"));

    let out = bin().args(["scenario", "no-such-scenario"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dualize_refuses_quantales_without_double_negation() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["dualize", "-q"])
        .arg(godel3(dir.path()))
        .arg("-s")
        .arg(sierpinski(dir.path()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("double negation"), "{}", stderr(&out));
    assert!(stderr(&out).contains("`1/2`"), "{}", stderr(&out));
}

#[test]
fn caps_are_enforced_and_name_their_flag() {
    let dir = tempfile::tempdir().unwrap();
    let crisp = write(
        dir.path(),
        "crisp.json",
        r#"{"points": ["x", "y"], "closed_subsets": [[], ["y"], ["x", "y"]]}"#,
    );
    let out = bin()
        .args(["--cap-enum", "2", "lowen", "-q"])
        .arg(godel3(dir.path()))
        .arg("-c")
        .arg(&crisp)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--cap-enum"), "{}", stderr(&out));

    let out = bin()
        .args(["--cap-cotopology", "2", "generate", "-q"])
        .arg(godel3(dir.path()))
        .arg("-s")
        .arg(sierpinski(dir.path()))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--cap-cotopology"), "{}", stderr(&out));
}

#[test]
fn cap_environment_variables_apply_and_flags_override_them() {
    let dir = tempfile::tempdir().unwrap();
    let crisp = write(
        dir.path(),
        "crisp.json",
        r#"{"points": ["x"], "closed_subsets": [[], ["x"]]}"#,
    );
    let out = bin()
        .env("QSOBER_CAP_ENUM", "2")
        .args(["lowen", "-q"])
        .arg(godel3(dir.path()))
        .arg("-c")
        .arg(&crisp)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));

    let out = bin()
        .env("QSOBER_CAP_ENUM", "2")
        .args(["--cap-enum", "100000", "lowen", "-q"])
        .arg(godel3(dir.path()))
        .arg("-c")
        .arg(&crisp)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("good extension: holds"));
}

#[test]
fn pipeline_commands_run_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let quantale = godel3(dir.path());
    let space = sierpinski(dir.path());
    let sets = write(
        dir.path(),
        "sets.json",
        r#"{"points": ["x", "y"], "fuzzy_sets": {"lam": ["1/2", "1/2"]}}"#,
    );
    let order = write(
        dir.path(),
        "order.json",
        r#"{"points": ["x", "y"], "R": [["1", "0"], ["1/2", "1"]]}"#,
    );

    let out = bin()
        .args(["closure", "-q"])
        .arg(&quantale)
        .arg("-s")
        .arg(&space)
        .arg("--sets")
        .arg(&sets)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("closure(lam)"));

    for sub in ["specialization", "sobrify", "check-hausdorff", "fr-points"] {
        let mut cmd = bin();
        cmd.arg(sub).arg("-q");
        if sub == "fr-points" {
            // Frame-map points need double negation; swap in a Łukasiewicz chain.
            let luk = write(dir.path(), "luk3.json", r#"{"standard": "lukasiewicz", "n": 3}"#);
            cmd.arg(&luk);
        } else {
            cmd.arg(&quantale);
        }
        cmd.arg("-s").arg(&space);
        let out = cmd.output().unwrap();
        assert!(out.status.success(), "{sub}: {}", stderr(&out));
    }

    let out = bin()
        .args(["alexandroff", "-q"])
        .arg(&quantale)
        .arg("-o")
        .arg(&order)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("lower sets"));
}

#[test]
fn corpus_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    let mut stdouts = Vec::new();
    for name in ["first.json", "second.json"] {
        let report = dir.path().join(name);
        let out = bin()
            .args(["corpus", "--count", "8", "--seed", "7", "--report"])
            .arg(&report)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        reports.push(std::fs::read_to_string(&report).unwrap());
        stdouts.push(stdout(&out));
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(stdouts[0], stdouts[1]);
    let doc: serde_json::Value = serde_json::from_str(&reports[0]).unwrap();
    assert_eq!(doc["members"].as_array().unwrap().len(), 8);
}
