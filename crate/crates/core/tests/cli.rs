use std::process::Command;

fn qisog(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qisog")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn documented_invocations() {
    let (code, out, _) = qisog(&["embed", "--p", "13"]);
    assert_eq!(code, 0);
    assert!(out.contains("e=2"), "{out}");
    assert_eq!(qisog(&["isocheck", "--p", "37", "--ell", "2"]).1, "isomorphic, 3 vertices\n");
    let (_, out, _) = qisog(&["oriented", "--p", "7", "--ell", "3", "--depth", "2"]);
    assert!(out.starts_with("1 local root (global); audit: pass\n"), "{out}");
}

#[test]
fn precondition_errors_exit_1() {
    for args in [
        &["brandt", "--p", "15", "--ell", "2"][..],
        &["ssgraph", "--p", "11", "--ell", "11"],
        &["oriented", "--p", "7", "--ell", "4"],
        &["embed"],
        &["nonsense"],
    ] {
        let (code, out, err) = qisog(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    assert_eq!(qisog(&["--help"]).0, 0);
}

#[test]
fn cap_exhaustion_exits_2() {
    let (code, _, err) = qisog(&["oriented", "--p", "7", "--ell", "2", "--depth", "40"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn json_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let dot = dir.path().join("c.dot");
    let (code, out, _) = qisog(&[
        "oriented", "--p", "7", "--ell", "3", "--depth", "2",
        "--json", json.to_str().unwrap(), "--dot", dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&out).unwrap(), doc);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 17);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn same_seed_same_bytes() {
    let args = ["algebra", "--p", "37", "--ell", "3", "--depth", "4", "--seed", "9", "--json"];
    let a = qisog(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a, qisog(&args));
    for cmd in [["brandt", "--p", "11", "--ell", "3"], ["ssgraph", "--p", "23", "--ell", "2"]] {
        let mut v = cmd.to_vec();
        v.push("--json");
        let (_, out, _) = qisog(&v);
        serde_json::from_str::<serde_json::Value>(&out).unwrap();
    }
}
