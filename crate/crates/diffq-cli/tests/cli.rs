use std::process::{Command, Output};

fn diffq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffq")).args(args).env_remove("DIFFQ_THREADS").output().unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = args.to_vec();
    a.extend(["--json", "--no-timing"]);
    let out = diffq(&a);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

fn all_pass(v: &serde_json::Value) -> bool {
    let r = v["results"].as_array().unwrap();
    !r.is_empty() && r.iter().all(|x| x["pass"] == true)
}

#[test]
fn characters_are_partition_numbers() {
    let out = diffq(&["characters", "--n", "3", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("1,1,2,3,5,7,11\n"));
}

#[test]
fn report_shape() {
    let (code, v) = json(&["characters", "--n", "2", "--ntw", "1", "--degree", "4"]);
    assert_eq!(code, 0);
    assert!(all_pass(&v));
    assert_eq!(v["config"]["tower"]["L"], 4);
    assert_eq!(v["config"]["d"], 1);
    assert_eq!(v["timing"], serde_json::Value::Null);
    let row = &v["results"][4];
    assert_eq!(row["name"], "dimension at degree 4");
    assert_eq!((row["lhs"].as_str(), row["rhs"].as_str()), (Some("5"), Some("5")));
}

#[test]
fn identical_runs_identical_bytes() {
    let args = ["verify-identity", "--n", "2", "--order", "2", "--json", "--no-timing"];
    assert_eq!(diffq(&args).stdout, diffq(&args).stdout);
    let timed = diffq(&["characters", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(diffq(&["bogus"]).status.code(), Some(2));
    assert_eq!(diffq(&["characters", "--n", "0"]).status.code(), Some(2));
    assert_eq!(diffq(&["whittaker", "--n", "2", "--u", "t"]).status.code(), Some(2));
    assert_eq!(diffq(&["whittaker", "--u", "t^"]).status.code(), Some(2));
}

#[test]
fn reducible_whittaker_fails() {
    // u_2/u_1 = q^2: the Whittaker vector is not unique
    let (code, v) = json(&["whittaker", "--n", "2", "--u", "t,t^3", "--half", "1", "--degree", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"][0]["pass"], false);
}

#[test]
fn whittaker_to_file() {
    let path = std::env::temp_dir().join(format!("diffq-whittaker-{}.json", std::process::id()));
    let out = diffq(&["whittaker", "--n", "1", "--degree", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("checks pass"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(all_pass(&v));
    // closed form against the solver on p(0) + ... + p(3) coefficients
    assert_eq!(v["results"].as_array().unwrap().len(), 2 + 7);
}

#[test]
fn small_runs_pass() {
    for args in [
        &["verify-identity", "--n", "3", "--order", "2"][..],
        &["whittaker", "--n", "2", "--degree", "2"],
        &["twisted-check", "--n", "2", "--ntw", "1", "--modes", "1", "--degree", "3"],
        &["twisted-check", "--n", "2", "--ntw", "0", "--modes", "1", "--degree", "2"],
        &["verify-walgebra", "--n", "2", "--modes", "1"],
        &["verify-walgebra", "--n", "2", "--ntw", "1", "--modes", "1"],
        &["decompose", "--n", "3", "--ntw", "1", "--degree", "6"],
        &["decompose", "--n", "2", "--degree", "6"],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{:?}", args);
        assert!(all_pass(&v), "{:?}", args);
    }
}

#[test]
fn threads_flag() {
    let (code, v) = json(&["characters", "--threads", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["config"]["threads"], 1);
}
