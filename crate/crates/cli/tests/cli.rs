use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_boolfam"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad output {text:?}: {e}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn itable() {
    let (code, v) = run(&["itable", "--n", "3", "--r", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(v["I"], 7);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn indep_max_on_a_chain() {
    let chain = r#"{"ground": 4, "sets": [[0], [0, 1], [0, 1, 2]]}"#;
    let (code, v) = run(&["indep", "max", "--in", "-"], Some(chain));
    assert_eq!(code, 0);
    assert_eq!(v["size"], 1);
}

#[test]
fn dependent_family_exits_one_with_cell() {
    let (code, v) = run(&["indep", "test"], Some(r#"{"ground": 4, "sets": [[0], [1], [2]]}"#));
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "dependent");
    assert_eq!(v["cell"], json!([1, 1, 0]));
}

#[test]
fn malformed_json_reports_position() {
    let (code, v) = run(&["indep", "test"], Some("{\"ground\": 4,\n \"sets\": [[0,]]}"));
    assert_eq!(code, 2);
    assert_eq!(v["error"], "input");
    assert_eq!(v["line"], 2);
    assert!(v["column"].as_u64().unwrap() > 0);
}

#[test]
fn precondition_failure_exits_two() {
    let pair = r#"{"ground": 4, "sets": [[0, 1], [0, 2]]}"#;
    let (code, v) = run(&["poly", "verify", "--poly", "(and x0 x1)", "--n", "2"], Some(pair));
    assert_eq!(code, 2);
    assert_eq!(v["error"], "precondition_failed");
}

#[test]
fn resource_cap_exits_three() {
    let (code, v) = run(&["sauer", "exhaustive", "--t", "5"], None);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "resource_cap");
}

#[test]
fn minimal_extension_verdicts() {
    let doc = r#"{"algebra": {"ground": 4, "sets": [[0, 1]]}, "x": [0]}"#;
    let (code, v) = run(&["algebra", "minimal-ext"], Some(doc));
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "minimal");
    assert_eq!(v["intermediate_algebras"], 2);

    let doc = r#"{"algebra": {"ground": 4, "sets": [[0, 1]]}, "x": "0x5"}"#;
    let (code, v) = run(&["algebra", "minimal-ext"], Some(doc));
    assert_eq!(code, 1);
    assert_eq!(v["witness"], json!([0, 1]));
}

#[test]
fn chain_failure_is_reported() {
    let gens = r#"{"ground": 4, "sets": [[0, 1], [0, 2], [0, 3]]}"#;
    let (code, v) = run(&["algebra", "chain"], Some(gens));
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fails_at");
}

#[test]
fn cantor_sigma_and_truncation() {
    let params = r#"{"m": 9, "x": "000000000"}"#;
    let (code, v) = run(&["cantor", "sigma", "--n", "1"], Some(params));
    assert_eq!(code, 0);
    assert_eq!(v["cylinder"], json!({"m": 9, "dom": [0, 1, 2, 3], "val": "0001"}));
    assert_eq!(v["measure"], "1/16");
    let (code, v) = run(&["cantor", "sigma", "--n", "3"], Some(params));
    assert_eq!(code, 2);
    assert_eq!(v["error"], "truncation");
}

#[test]
fn cantor_separate_then_verify() {
    let (code, built) = run(&["cantor", "separate", "--p", "1", "--count", "5", "--m", "36"], None);
    assert_eq!(code, 0);
    let family = built["family"].to_string();
    let (code, v) = run(&["cantor", "verify", "--in", "-", "--p", "1", "--n-max", "5"], Some(&family));
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    assert_eq!(v["bound"], "5/224");
}

#[test]
fn measure_commands() {
    let pair = r#"{"ground": 4, "sets": [[0, 1], [0, 2]]}"#;
    let (code, mu) = run(&["measure", "product"], Some(pair));
    assert_eq!(code, 0);
    let mu = json!({"algebra": mu["algebra"], "weights": mu["weights"]});
    let doc = json!({"measure": mu, "set": [0, 1]}).to_string();
    let (_, v) = run(&["measure", "of"], Some(&doc));
    assert_eq!(v["measure"], "1/2");
    let doc = json!({"measure": mu, "family": serde_json::from_str::<Value>(pair).unwrap()}).to_string();
    let (code, v) = run(&["measure", "sep", "--eps", "1/2"], Some(&doc));
    assert_eq!(code, 0);
    assert_eq!(v["independent"]["size"], 2);
}

#[test]
fn verify_single_check_is_deterministic() {
    let args = ["verify", "--seed", "7", "--check", "acceptance-07"];
    let (code, mut a) = run(&args, None);
    assert_eq!(code, 0);
    let (_, mut b) = run(&args, None);
    a["checks"][0]["millis"] = json!(0);
    b["checks"][0]["millis"] = json!(0);
    assert_eq!(a, b);
}
