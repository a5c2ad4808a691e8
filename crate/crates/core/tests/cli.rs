use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreathcount")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn cyclic_three_uses_closed_form() {
    let v = json(&["count", "--group", "cyclic:3", "--k", "2"]);
    assert_eq!(v["value"], "8");
    assert_eq!(v["method"], "closed-form");
}

#[test]
fn symmetric_three_by_clifford() {
    let v = json(&["count", "--group", "symmetric:3", "--k", "2", "--method", "clifford"]);
    assert_eq!(v["value"], "10");
}

#[test]
fn k_from_explicit_base_group() {
    // S3 has three classes
    let v = json(&["count", "--group", "cyclic:2", "--x", "(1 2 3);(1 2)"]);
    assert_eq!(v["k"], 3);
    assert_eq!(v["value"], "9");
}

#[test]
fn classify_wreath_cyclic_two() {
    let v = json(&["classify", "--group", "wreath-cyclic:2"]);
    assert_eq!(v["transitive"], true);
    assert_eq!(v["primitive"], false);
    assert_eq!(v["semiprimitive"], false);
    assert_eq!(v["class_count"], "5");
}

#[test]
fn all_methods_agree() {
    let o = run(&["count", "--group", "dihedral:5", "--k", "3", "--method", "all", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,k,n,order,method,value,orbit_count"));
    let exact: Vec<&str> = lines
        .filter(|l| !l.contains("burnside-lower"))
        .map(|l| l.split(',').nth(5).unwrap())
        .collect();
    assert!(exact.len() >= 2);
    assert!(exact.iter().all(|v| *v == exact[0]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["count", "--group", "bogus:1", "--k", "2"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--group", "gens:(1 2", "--k", "2"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--group", "cyclic:3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let refused = run(&["count", "--group", "symmetric:12", "--k", "2", "--method", "clifford"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("budget"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_flags_and_env() {
    let args = ["count", "--group", "cyclic:6", "--k", "2", "--method", "clifford"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut tight = args.to_vec();
    tight.extend(["--budget-colorings", "10"]);
    assert_eq!(run(&tight).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_wreathcount"))
        .args(args)
        .env("WREATHCOUNT_MAX_COLORINGS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["oracles", "formulas", "bounds", "semiprimitive"] {
        let o = run(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn bounds_lem15_reports_failure_in_product_action() {
    let o = run(&["bounds", "--which", "lem15", "--m", "3", "--l", "1", "--t", "2", "--output", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.contains(",36,16,false,"), "{row}");
}

#[test]
fn scan_is_deterministic_across_jobs() {
    let a = run(&["scan", "--m-from", "2", "--m-to", "3", "--jobs", "1"]);
    let b = run(&["scan", "--m-from", "2", "--m-to", "3", "--jobs", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("param,k,n,order,value,bound,holds,mode"));
}
