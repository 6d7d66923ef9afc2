use std::process::Command;

use unit_order_lab::cli::{load_config, run};
use unit_order_lab::lab::Subject;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["unit-order-lab".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn single_value_queries() {
    assert_eq!(invoke(&["order", "--base", "2", "--modulus", "7"]), (0, "3\n".into(), String::new()));
    assert_eq!(invoke(&["matrix-order", "--matrix", "2,1;1,1", "--modulus", "77"]).1, "40\n");
    assert_eq!(invoke(&["matrix-order", "--trace", "3", "--modulus", "77"]).1, "40\n");
    assert_eq!(invoke(&["order", "--base", "-1", "--modulus", "7"]).1, "2\n");
}

#[test]
fn invalid_input_exits_with_one() {
    let (code, out, err) = invoke(&["matrix-order", "--matrix", "0,-1;1,0", "--modulus", "97"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("matrix is elliptic"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let (code, _, err) = invoke(&["matrix-order", "--matrix", "2,1;1,2", "--modulus", "97"]);
    assert_eq!(code, 1);
    assert!(err.contains("determinant"), "{err}");

    let (code, _, err) = invoke(&["matrix-order", "--matrix", "2,1,1", "--modulus", "97"]);
    assert_eq!(code, 1);
    assert!(err.contains("a,b;c,d"), "{err}");

    assert_eq!(invoke(&["scan-primes", "--bogus"]).0, 1);
    assert_eq!(invoke(&["scan-primes", "--trace", "3", "--base", "2"]).0, 1);
    assert_eq!(invoke(&["order", "--base", "2", "--modulus", "8"]).0, 1);
    assert_eq!(invoke(&["scan-primes", "--limit", "100", "--f", "sqrt"]).0, 1);
    assert_eq!(invoke(&["scan-primes", "--limit", "100", "--format", "xml"]).0, 1);
    assert_eq!(invoke(&["lemma-simple", "--y", "1"]).0, 1);
    assert_eq!(invoke(&["chebotarev", "--base", "2", "--limit", "100"]).0, 1);
    assert_eq!(invoke(&[]).0, 1);
}

#[test]
fn resource_limits_exit_with_two() {
    let (code, _, err) = invoke(&["scan-primes", "--limit", "1000000000"]);
    assert_eq!(code, 2);
    assert!(err.contains("limit"));
    assert_eq!(invoke(&["scan-composites", "--limit", "2000000"]).0, 2);
}

#[test]
fn help_exits_with_zero() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("scan-primes"));
}

#[test]
fn scans_write_csv() {
    let (code, out, _) = invoke(&["scan-primes", "--trace", "3", "--limit", "30"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "p,class,torus,ord,i_p,is_bad");
    assert_eq!(lines.len(), 11);
    assert!(lines.contains(&"5,R,,10,,1"));

    let (_, out, _) = invoke(&["scan-composites", "--limit", "10"]);
    assert_eq!(out.lines().next(), Some("N,ord,lambda,s,N_G,N_B,d0,meets_threshold"));
    assert_eq!(out.lines().count(), 10);

    let (_, out, _) = invoke(&["bad-primes", "--limit", "1000", "--z-list", "2,100,2000"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "z,beta");
    assert_eq!(lines[3], "2000,0");

    let (_, out, _) = invoke(&["chebotarev", "--limit", "1000", "--n-list", "2,3"]);
    assert_eq!(out.lines().count(), 3);

    let (_, out, _) = invoke(&["lemma-simple", "--y", "10"]);
    assert!(out.lines().any(|l| l == "11,5,1"));

    let (_, out, _) = invoke(&["field-info", "--trace", "6"]);
    assert!(out.contains("field_disc,8"));
    let (_, out, _) = invoke(&["field-info", "--trace", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["field"]["field_disc"], "8");
}

#[test]
fn threads_never_change_output() {
    let (_, one, _) = invoke(&["scan-primes", "--limit", "50000", "--threads", "1", "--checkpoint-every", "3000"]);
    let (_, many, _) = invoke(&["scan-primes", "--limit", "50000", "--threads", "7", "--checkpoint-every", "3000"]);
    assert_eq!(one, many);
    let json = |threads: &str| {
        let (_, out, _) = invoke(&["scan-composites", "--limit", "3000", "--threads", threads, "--format", "json"]);
        let mut v: serde_json::Value = serde_json::from_str(&out).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    assert_eq!(json("1"), json("5"));
}

#[test]
fn partial_runs_emit_json_and_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let (code, _, err) = invoke(&[
        "scan-primes",
        "--limit",
        "300000",
        "--threads",
        "1",
        "--checkpoint-every",
        "10000",
        "--time-budget",
        "0",
        "--format",
        "json",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "{err}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["partial"], true);
    assert_eq!(v["completed_upto"], 40_001);
}

#[test]
fn config_files() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let err = load_config(&missing).unwrap_err().to_string();
    assert!(err.contains("missing.json"), "{err}");

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "{}").unwrap();
    let config = load_config(&empty).unwrap();
    assert_eq!(config.limit, 1_000_000);
    assert_eq!(config.epsilon, 0.1);
    assert_eq!(config.n_list, vec![2, 3, 4, 5]);
    assert!(matches!(config.subject, Subject::Matrix(_)));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"limit\": 100,\n  \"epsilon\": oops\n}\n").unwrap();
    let err = load_config(&broken).unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("oops"), "{err}");

    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, "{\"limt\": 5}").unwrap();
    assert!(load_config(&unknown).unwrap_err().to_string().contains("limt"));

    let file = dir.path().join("scan.json");
    std::fs::write(&file, r#"{"subject": {"base": 2}, "limit": 100000, "f": "loglog", "z_list": [10, 100]}"#).unwrap();
    let config = load_config(&file).unwrap();
    assert_eq!(config.subject, Subject::Base(2));
    assert_eq!(config.limit, 100_000);

    let (code, out, _) = invoke(&["bad-primes", "--config", file.to_str().unwrap(), "--limit", "10000", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["limit"], 10_000);
    assert_eq!(v["config"]["f"], "loglog");
    assert_eq!(v["config"]["subject"]["base"], 2);
    assert_eq!(v["beta"]["sums"].as_array().unwrap().len(), 2);
}

#[test]
fn binary_streams_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_unit-order-lab");
    let out = Command::new(bin).args(["order", "--base", "2", "--modulus", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3\n");

    let out = Command::new(bin).args(["matrix-order", "--matrix", "0,-1;1,0", "--modulus", "97"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("matrix is elliptic"));

    let out = Command::new(bin)
        .args(["scan-primes", "--limit", "2000"])
        .env("UNIT_ORDER_LAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 304);
}
