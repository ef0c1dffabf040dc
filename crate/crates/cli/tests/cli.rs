use std::process::{Command, Output};

fn twistlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(args)
        .env_remove("TWISTLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = twistlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "acyclic", "-k", "2", "-n", "4"]), "22");
    assert_eq!(stdout(&["count", "orientations", "-k", "2", "-n", "4"]), "18");
    assert_eq!(stdout(&["count", "twists", "-k", "2", "-n", "5"]), "594");
    assert_eq!(stdout(&["count", "twists", "-k", "2", "-n", "5", "--formula"]), "594");
    assert_eq!(stdout(&["count", "indecomposable", "-k", "2", "-n", "4"]), "11");
    assert_eq!(
        stdout(&["count", "cambrian", "-k", "2", "-n", "4", "--signature", "+-++"]),
        "24"
    );
    assert_eq!(stdout(&["count", "twins", "-k", "1", "-n", "4"]), "22");
    assert_eq!(stdout(&["count", "hypertwists", "-k", "1", "-n", "3"]), "11");
}

#[test]
fn insert_reports_the_fiber() {
    let out = stdout(&["insert", "-k", "2", "--fiber", "31542"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fiber"], serde_json::json!(["31542", "35142"]));
    assert_eq!(v["twist"]["n"], 5);
    let plain = stdout(&["insert", "-k", "2", "35142"]);
    assert_eq!(serde_json::to_string(&v["twist"]).unwrap(), plain);
}

#[test]
fn lattice_exports_are_deterministic() {
    let a = stdout(&["lattice", "twists", "-k", "1", "-n", "4", "--dot"]);
    let b = stdout(&["lattice", "twists", "-k", "1", "-n", "4", "--dot", "--jobs", "1"]);
    assert_eq!(a, b);
    assert_eq!(a.matches("label=").count(), 14);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["lattice", "schroder", "-k", "1", "-n", "3"])).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 11);
}

#[test]
fn hopf_products() {
    let out = stdout(&["hopf", "product", "--basis", "f", "12", "1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    let cop = stdout(&["hopf", "coproduct", "--basis", "o", "3|15|24"]);
    let v: serde_json::Value = serde_json::from_str(&cop).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn checks_pass() {
    for suite in ["fibers", "triangle", "roundtrip", "lattice", "hopf"] {
        let out = stdout(&["check", suite, "-k", "2", "-n", "4"]);
        assert!(out.starts_with("PASS"), "{out}");
    }
}

#[test]
fn failures_exit_non_zero() {
    let out = twistlab(&["count", "acyclic", "-k", "2", "-n", "4", "--budget", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let env = Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(["count", "acyclic", "-k", "2", "-n", "4"])
        .env("TWISTLAB_BUDGET", "3")
        .output()
        .unwrap();
    assert!(!env.status.success());
    assert!(!twistlab(&["insert", "-k", "2", "3154"]).status.success());
    assert!(!twistlab(&["hopf", "coproduct", "12", "21"]).status.success());
}
