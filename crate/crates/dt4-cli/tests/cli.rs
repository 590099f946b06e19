use std::process::{Command, Output};

use serde_json::Value;

fn dt4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dt4")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn partition_count() {
    let o = dt4(&["partitions", "--count", "3"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["dt4-schema"], 1);
    assert_eq!(v["n"], 3);
    assert_eq!(v["count"], 10);
}

#[test]
fn per_profile_counts_sum_to_total() {
    let v = json(&dt4(&["partitions", "--count", "4", "--group", "zr:2"]));
    let total: u64 = v["profiles"].as_array().unwrap().iter().map(|p| p["count"].as_u64().unwrap()).sum();
    assert_eq!(v["count"], 26);
    assert_eq!(total, 26);
}

#[test]
fn verify_z2_exits_zero() {
    let o = dt4(&["verify", "--conjecture", "orbifold", "--group", "zr:2", "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["passed"], true);
}

#[test]
fn broken_sign_rule_exits_one() {
    let o = dt4(&["verify", "--conjecture", "orbifold", "--group", "trivial", "--order", "2", "--sign-rule", "no-diag"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn order_zero_series_is_one() {
    let o = dt4(&["compute", "--group", "trivial", "--order", "0"]);
    assert!(o.status.success());
    let terms = &json(&o)["result"]["series"]["terms"];
    assert_eq!(terms.as_array().unwrap().len(), 1);
    assert_eq!(terms[0]["exp"], serde_json::json!([0]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dt4(&["compute", "--group", "bogus", "--order", "1"]).status.code(), Some(2));
    assert_eq!(dt4(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dt4(&["age", "--element", "2:1,0,0,0"]).status.code(), Some(2));
}

#[test]
fn output_is_independent_of_workers() {
    let run = |w: &str| dt4(&["--workers", w, "--no-timings", "compute", "--group", "z2z2", "--order", "3"]).stdout;
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
    let run = |w: &str| {
        dt4(&["--workers", w, "--no-timings", "verify", "--conjecture", "limits", "--group", "zr:2", "--order", "2"])
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn age_witness_for_z3() {
    let o = dt4(&["age", "--group", "z3age2"]);
    let v = json(&o);
    assert_eq!(v["result"]["age_at_most_one"], false);
    assert_eq!(v["result"]["witness"], serde_json::json!([2, 2, 2, 0]));
    let o = dt4(&["age", "--element", "2:1,1,1,1"]);
    assert_eq!(json(&o)["result"]["age"], "2/1");
}

#[test]
fn output_file() {
    let p = std::env::temp_dir().join(format!("dt4-cli-{}.json", std::process::id()));
    let o = dt4(&["--out", p.to_str().unwrap(), "partitions", "--count", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["count"], 4);
    let _ = std::fs::remove_file(p);
}
