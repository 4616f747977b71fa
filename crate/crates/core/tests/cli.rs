use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigenring"))
}

fn write(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn verify_writes_deterministic_json() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let s = bin()
            .args(["verify", "--suite", "example-3.13", "--seed", "7", "--json"])
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(s.code(), Some(0));
    }
    let ja = std::fs::read(&a).unwrap();
    assert_eq!(ja, std::fs::read(&b).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["budget"]["seed"], 7);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["checks"][0].get("wall_ms").is_none());
    for c in v["checks"].as_array().unwrap() {
        assert!(c["theorem_id"].is_string() && c["instance"]["name"].is_string());
        assert_eq!(c["verdict"], "pass");
    }
}

#[test]
fn timing_adds_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let s = bin()
        .args(["verify", "--suite", "stone", "--timing", "--json"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(s.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert!(v["checks"][0]["wall_ms"].is_u64());
}

#[test]
fn skips_pass_unless_strict() {
    let out = bin().args(["verify", "--suite", "stone", "--budget", "100"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("skipped"));
    assert!(text.contains("budget"));
    let s = bin()
        .args(["verify", "--suite", "stone", "--budget", "100", "--strict"])
        .status()
        .unwrap();
    assert_eq!(s.code(), Some(1));
}

#[test]
fn invalid_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_p = write(dir.path(), "p.json", r#"{"field":{"p":6},"algebra":{"kind":"matrix","n":2}}"#);
    let garbage = write(dir.path(), "g.json", "{not json");
    let bad_action = write(
        dir.path(),
        "a.json",
        r#"{"field":{"p":2},"algebra":{"kind":"field"},"module":{"kind":"action","dim":1,"matrices":[[[0]]]}}"#,
    );
    for spec in [&bad_p, &garbage, &bad_action] {
        let s = bin().arg("check-ring").arg("--spec").arg(spec).status().unwrap();
        assert_eq!(s.code(), Some(2), "{}", spec.display());
    }
    assert_eq!(bin().args(["verify", "--suite", "t6"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["verify", "--trials", "0"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().args(["verify", "--spec", "/nonexistent"]).status().unwrap().code(), Some(2));
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(2));
}

#[test]
fn inspect_and_classes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "m.json",
        r#"{"name":"M2F3","field":{"p":3},"algebra":{"kind":"matrix","n":2}}"#,
    );
    let out = dir.path().join("o.json");
    let s = bin().arg("inspect-module").arg("--spec").arg(&spec).arg("--json").arg(&out).output().unwrap();
    assert!(s.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["maximal_submodules"], 4);
    assert_eq!(v["length"], 2);
    assert_eq!(v["faithfully_projective"], true);
    assert_eq!(v["local_summands"], serde_json::json!([[2, 2]]));

    let s = bin().arg("similarity-classes").arg("--spec").arg(&spec).arg("--json").arg(&out).output().unwrap();
    assert!(s.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["size"], 4);
    assert_eq!(v["aggregate"]["holds"], true);

    let s = bin().arg("check-ring").arg("--spec").arg(&spec).arg("--json").arg(&out).output().unwrap();
    assert!(s.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["maximal_right_ideals"], 4);
    assert_eq!(v["two_sided_maximal"], 0);
    assert_eq!(v["radical_dim"], 0);
}

#[test]
fn corpus_file_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "c.json",
        r#"[{"field":{"p":2},"algebra":{"kind":"dual_numbers"}},
            {"field":{"p":2},"algebra":{"kind":"product","factors":[{"kind":"field"},{"kind":"matrix","n":2}]}}]"#,
    );
    let out = bin().arg("verify").arg("--spec").arg(&spec).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("Dual(F2)/regular"));
    assert!(text.contains("F2xM2(F2)/regular"));
}
