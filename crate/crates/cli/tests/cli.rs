use std::io::Write;
use std::process::{Command, Output};

use fibcheck::report::leaves;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcheck"))
        .args(args)
        .env_remove("FIBCHECK_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "bogus"][..],
        &["weierstrass", "--p", "3"],
        &["weierstrass", "--p", "263"],
        &["weierstrass", "--l", "0"],
        &["torus", "no-such-file.scn"],
        &["coh", "O(1"],
        &["smooth", "x0^2 + x1", "--p", "7"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn malformed_scenario_reports_line_and_field() {
    let mut f = tempfile();
    writeln!(f.1, "schema = 1\n\n[[factor]]\nkind = \"elliptic\"\nperiod = \"tau\"\n\n[[generator]]\nmap = [\"z1 + 1/\"]").unwrap();
    let out = run(&["torus", f.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 8") && err.contains("map"), "{err}");
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let dir = std::env::temp_dir().join(format!("fibcheck-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.scn");
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn classify_su2xsu2_both_impossible() {
    let out = run(&["classify", "su2xsu2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let outcomes: Vec<&Value> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["check_id"].as_str().unwrap().starts_with("classify/"))
        .map(|r| &r["payload"]["verdict"]["outcome"])
        .collect();
    assert_eq!(outcomes, vec!["Impossible", "Impossible"]);
}

#[test]
fn torus_empty_scenario() {
    let v = json(&run(&["torus", "empty.scn"]));
    let o = &v["records"][0]["payload"]["outcome"];
    assert_eq!(o["order"], 1);
    assert_eq!(o["hodge"], serde_json::json!([1, 4, 6, 4, 1]));
}

#[test]
fn weierstrass_l3_degree_and_seed_recorded() {
    let out = run(&["weierstrass", "--l", "3", "--p", "101", "--seed", "7", "--trials", "2"]);
    let v = json(&out);
    assert_eq!(v["invocation"]["seed"], 7);
    let rec = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check_id"] == "weierstrass/l3/discriminant-degree")
        .unwrap();
    assert_eq!(rec["payload"]["found"], serde_json::json!([36, 36]));
}

#[test]
fn fibre_product_reports_transversality() {
    let v = json(&run(&["weierstrass", "--l", "1", "--p", "31", "--trials", "3", "--fibre-product", "--l2", "2"]));
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["check_id"] == "weierstrass/l1/transversal"));
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fibcheck"))
        .args(["weierstrass", "--p", "31", "--trials", "1"])
        .env("FIBCHECK_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&out)["invocation"]["seed"], 99);
}

#[test]
fn report_all_is_deterministic_and_formats_agree() {
    let a = run(&["report", "all"]);
    let b = run(&["report", "all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(run(&["report", "all", "--format", "text"]).stdout).unwrap();
    let v = json(&a);
    for (i, r) in v["records"].as_array().unwrap().iter().enumerate() {
        let header = format!("[{}] {} ({})", r["status"].as_str().unwrap(), r["check_id"].as_str().unwrap(), r["citation"].as_str().unwrap());
        assert!(text.contains(&header), "{header}");
        for (path, value) in leaves(&format!("records.{i}.payload"), &r["payload"]) {
            assert!(text.contains(&format!("{path} = {value}")), "{path}");
        }
    }
    let discrepancies = v["records"].as_array().unwrap().iter().filter(|r| r["status"] == "DISCREPANCY").count();
    assert!(discrepancies >= 2);
}

#[test]
fn coh_with_bindings() {
    let v = json(&run(&["coh", "Sym6(Dual(W))", "--let", "W=O(-1)+O(-2)"]));
    assert_eq!(v["records"][0]["payload"]["h"], serde_json::json!(["399", "0", "0"]));
}
