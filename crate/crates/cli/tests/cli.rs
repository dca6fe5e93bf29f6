use std::process::{Command, Output};

fn baxter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baxter")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_identity_is_zero() {
    let src = "P(x) * P(y) - P(x*P(y)) - P(y*P(x)) - lam*P(x*y)";
    for flags in [["--ring", "int", "--lambda", "2"], ["--ring", "rat", "--lambda", "-1/2"], ["--ring", "mod:9", "--lambda", "3"]] {
        let mut args = flags.to_vec();
        args.extend(["eval", src]);
        let o = baxter(&args);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "0\n");
    }
}

#[test]
fn eval_renders_canonically() {
    let o = baxter(&["--lambda", "3", "eval", "U(1)*U(1)"]);
    assert_eq!(stdout(&o), "3*T(1,1) + 2*T(1,1,1)\n");
    let o = baxter(&["--ring", "rat", "--lambda", "0", "eval", "U(1)^3"]);
    assert_eq!(stdout(&o), "6*T(1,1,1,1)\n");
    let o = baxter(&["--ring", "rat", "--precision", "6", "eval", "U(1) * geom(-1)"]);
    assert_eq!(stdout(&o), "0 + O(deg 7)\n");
}

#[test]
fn parse_errors_exit_with_two() {
    for expr in ["T(x, T(1))", "z + 1", "x +", "1/0"] {
        let o = baxter(&["eval", expr]);
        assert_eq!(o.status.code(), Some(2), "{expr}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    let nested = baxter(&["eval", "T(x, T(1))"]);
    assert!(String::from_utf8_lossy(&nested.stderr).contains("nested"));
    assert_eq!(baxter(&["--ring", "mod:1", "eval", "1"]).status.code(), Some(2));
    assert_eq!(baxter(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(baxter(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn json_envelope() {
    let o = baxter(&["--json", "--ring", "mod:5", "--lambda", "2", "eval", "T(x,1) + 4*T(1)"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["command"], "eval");
    assert_eq!(doc["context"]["ring"], "mod:5");
    assert_eq!(doc["context"]["lambda"], "2");
    assert_eq!(doc["result"]["kind"], "finite");
    assert_eq!(doc["result"]["text"], "4*T(1) + T(x,1)");
    assert_eq!(doc["result"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn phi_lines() {
    let o = baxter(&["--lambda", "2", "phi", "--len", "4", "U(1)"]);
    assert_eq!(stdout(&o), "[1] 0\n[2] 2*T(1)\n[3] 4*T(1)\n[4] 6*T(1)\n");
    let o = baxter(&["--lambda", "2", "--precision", "3", "phi", "--len", "6", "geom(1)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = baxter(&["--lambda", "0", "phi", "--len", "2", "U(1)"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("injective"));
}

#[test]
fn ideal_membership() {
    let o = baxter(&["ideal-member", "--gens", "x", "T(x,y) + T(1,x)"]);
    assert_eq!(stdout(&o), "true\n");
    let o = baxter(&["ideal-member", "--gens", "x", "T(y)"]);
    assert_eq!(stdout(&o), "false\n");
    let o = baxter(&["ideal-member", "--gens", "scalar:2", "2*T(1,x) + 4*T(y)"]);
    assert_eq!(stdout(&o), "true\n");
    let o = baxter(&["--ring", "rat", "ideal-member", "--gens", "scalar:2", "T(y)"]);
    assert_eq!(stdout(&o), "true\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("unit"));
}

#[test]
fn shuffle_listing() {
    let o = baxter(&["enumerate-shuffles", "1", "1"]);
    assert!(stdout(&o).starts_with("count: 3\n"));
    let o = baxter(&["--json", "enumerate-shuffles", "2", "2"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"]["count"], 13);
}

#[test]
fn verify_suites_pass_and_rerun_identically() {
    for suite in ["charp", "int-lambda2", "complete-zero-divisor", "prop-unit"] {
        let a = baxter(&["verify", suite]);
        assert_eq!(a.status.code(), Some(0), "{suite}: {}", stdout(&a));
        assert!(stdout(&a).lines().all(|l| !l.starts_with("FAIL")));
        let b = baxter(&["verify", suite]);
        assert_eq!(a.stdout, b.stdout);
    }
    let o = baxter(&["--json", "--seed", "7", "verify", "ideal-quotient"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["context"]["seed"], 7);
    assert_eq!(doc["report"][0]["verdict"], "pass");
    assert_eq!(doc["report"][0]["detail"], "0");
}
