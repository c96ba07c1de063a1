use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rht() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rht"));
    c.env_remove("RHT_MAX_DEGREE");
    c
}

fn run(args: &[&str]) -> Output {
    rht().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn golden_reports() {
    let cases: &[(&str, &[&str])] = &[
        ("betti_kodaira_thurston.json", &["betti", "--family", "kodaira-thurston"]),
        ("lemma2_kt_k3.json", &["lemma", "--which", "2", "--target", "kt", "--k", "3"]),
        ("lemma2_m4_k3.json", &["lemma", "--which", "2", "--target", "m4", "--k", "3"]),
        ("lemma1_m3_k4.json", &["lemma", "--which", "1", "--m", "3", "--k", "4"]),
        (
            "massey_heisenberg.json",
            &["massey", "--family", "heisenberg", "--a", "x1", "--b", "x1", "--c", "x2"],
        ),
        ("blowup_betti_kt_n5.json", &["blowup-betti", "--N", "5", "--family", "kodaira-thurston"]),
        ("conn_sum_q7_dim10.json", &["conn-sum-survival", "--q", "7", "--dim", "10"]),
        (
            "symplectic_kt.json",
            &[
                "symplectic", "--family", "kodaira-thurston", "--form", "x1*x4 + x2*x3",
                "--lefschetz", "--harmonic",
            ],
        ),
        (
            "symplectic_cpn2.json",
            &["symplectic", "--family", "cpn", "--m", "2", "--lefschetz", "--harmonic"],
        ),
        ("symplectic_omega4.json", &["symplectic", "--standard-omega", "--m", "2", "--lefschetz"]),
        ("model_heisenberg.json", &["model", "--family", "heisenberg"]),
        ("cup_heisenberg.json", &["cup", "--family", "heisenberg", "--a", "x1", "--b", "x2"]),
        ("projectivize_point_k3.json", &["projectivize", "--family", "point", "--k", "3"]),
    ];
    for (file, args) in cases {
        assert_eq!(stdout(args), golden(file), "{file}");
    }
}

#[test]
fn key_values() {
    assert_eq!(json(&["betti", "--family", "kodaira-thurston"])["betti"], serde_json::json!([1, 3, 4, 3, 1]));
    assert_eq!(json(&["lemma", "--which", "2", "--target", "kt", "--k", "3"])["nontrivial"], true);
    let m = json(&["massey", "--family", "heisenberg", "--a", "x1", "--b", "x1", "--c", "x2"]);
    assert_eq!(m["nontrivial"], true);
    assert_eq!(m["defined"], true);
    let b = json(&["blowup-betti", "--N", "5", "--family", "kodaira-thurston"]);
    assert_eq!(b["betti"][3], 3);
    assert_eq!(b["euler"], 6);
}

#[test]
fn output_is_deterministic() {
    let args = ["formality-scan", "--family", "vn", "--n", "4", "--max-degree", "3"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn pretty_is_the_same_data() {
    let args = ["symplectic", "--standard-omega", "--m", "2", "--lefschetz", "--harmonic"];
    let compact = json(&args);
    let mut with_pretty = args.to_vec();
    with_pretty.push("--pretty");
    let text = stdout(&with_pretty);
    assert!(text.contains('\n') && text.lines().count() > 3);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), compact);
}

#[test]
fn dump_and_reload() {
    for family in [
        vec!["--family", "heisenberg"],
        vec!["--family", "kodaira-thurston"],
        vec!["--family", "vn", "--n", "6"],
        vec!["--family", "cpn", "--m", "2"],
        vec!["--family", "abelian", "--n", "3"],
    ] {
        let path = scratch(&format!("dump-{}.json", family.join("-")));
        let mut args = vec!["model"];
        args.extend(&family);
        args.extend(["--output", path.to_str().unwrap()]);
        let out = run(&args);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        let dumped = fs::read_to_string(&path).unwrap();
        let reloaded = stdout(&["model", "--from-file", path.to_str().unwrap()]);
        assert_eq!(reloaded, dumped);
        let b1 = stdout(&[&["betti"][..], &family[..]].concat());
        let b2 = stdout(&["betti", "--from-file", path.to_str().unwrap()]);
        assert_eq!(b1, b2);
    }
}

#[test]
fn lie_algebra_file_input() {
    let good = scratch("heisenberg-lie.json");
    fs::write(&good, r#"{"dim":3,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":"1"}]}]}"#).unwrap();
    assert_eq!(json(&["betti", "--from-file", good.to_str().unwrap()])["betti"], serde_json::json!([1, 2, 2, 1]));

    let bad = scratch("broken-lie.json");
    fs::write(
        &bad,
        r#"{"dim":5,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":"1"}]},{"i":3,"j":5,"terms":[{"k":4,"c":"1"}]}]}"#,
    )
    .unwrap();
    let out = run(&["betti", "--from-file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "JacobiFailure");
}

#[test]
fn exit_codes() {
    let out = run(&["massey", "--family", "heisenberg", "--a", "x1", "--b", "x1 + * x2", "--c", "x2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "SyntaxError");
    assert_eq!(err["error"]["line"], 1);
    assert_eq!(err["error"]["column"], 6);

    let out = run(&["cup", "--family", "heisenberg", "--a", "x1^2", "--b", "x2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["betti", "--family", "kodaira-thurston", "--max-degree", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "CapExceeded");

    let out = run(&["massey", "--family", "heisenberg", "--a", "x3", "--b", "x1", "--c", "x2"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(run(&["betti", "--family", "vn"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn cap_override_from_environment() {
    let out = rht()
        .args(["betti", "--family", "kodaira-thurston"])
        .env("RHT_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"betti\":[1,3,4]}\n");
    let out = rht()
        .args(["betti", "--family", "kodaira-thurston"])
        .env("RHT_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chern_inputs_are_reported() {
    let v = json(&["projectivize", "--family", "kodaira-thurston", "--k", "2", "--chern", "x1*x2,0", "--max-degree", "4"]);
    assert_eq!(v["chern"], serde_json::json!(["x1*x2", "0"]));
    assert_eq!(v["relation_holds"], true);
    let out = run(&["projectivize", "--family", "kodaira-thurston", "--k", "2", "--chern", "x3*x4,0"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "ChernNotClosed");
}

#[test]
fn lemma_sweep_with_chern_classes() {
    let v = json(&["lemma", "--which", "1", "--m", "3", "--k", "4", "--chern", "2*x1*x2,0,0,0"]);
    assert_eq!(v["chern"][0], "2*x1*x2");
    assert_eq!(v["nontrivial"], true);
    let v = json(&["lemma", "--which", "2", "--target", "kt", "--k", "2"]);
    assert_eq!(v["hypotheses_met"], false);
    assert_eq!(v["nontrivial"], false);
}
