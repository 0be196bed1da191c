//! End-to-end tests of the command-line interface: report contents, exit
//! codes, gating, and both trajectory output formats.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubevote"))
}

fn run_with_stdin(cmd: &mut Command, stdin: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cubevote");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn intro_json() -> String {
    let out = bin()
        .args(["construct", "--name", "intro_example"])
        .output()
        .unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn payoff_report_contents() {
    let out = run_with_stdin(
        bin().args(["payoff", "--a", "110", "--b", "000"]),
        &intro_json(),
    );
    let report = json_of(&out);
    assert_eq!(report["command"], "payoff");
    assert_eq!(report["results"]["v_ab"]["exact"], "1/5");
    assert_eq!(report["results"]["tie"]["exact"], "2/5");
    assert_eq!(report["results"]["v_ba"]["exact"], "2/5");
    assert_eq!(report["results"]["p1"]["exact"], "2/5");
    assert_eq!(report["results"]["p2"]["exact"], "3/5");
    assert!(report["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn best_response_report() {
    let out = run_with_stdin(bin().args(["best-response", "--b", "000"]), &intro_json());
    let report = json_of(&out);
    assert_eq!(report["results"]["value"]["exact"], "3/5");
    assert_eq!(report["results"]["argmax"], serde_json::json!(["111"]));
}

#[test]
fn majority_report() {
    let out = run_with_stdin(bin().arg("majority"), &intro_json());
    let report = json_of(&out);
    assert_eq!(report["results"]["majority_point"], "000");
    assert_eq!(report["results"]["marginals"][0]["exact"], "3/5");
    assert_eq!(
        report["results"]["classification"],
        serde_json::json!(["zero", "zero", "zero"])
    );
    assert_eq!(report["results"]["free_coords"], serde_json::json!([]));
}

#[test]
fn k_local_verdicts() {
    let out = run_with_stdin(
        bin().args(["equilibria", "--k-local", "2"]),
        &intro_json(),
    );
    let report = json_of(&out);
    assert_eq!(report["results"]["is_k_local_equilibrium"], true);

    let out = run_with_stdin(
        bin().args(["equilibria", "--k-local", "3"]),
        &intro_json(),
    );
    let report = json_of(&out);
    assert_eq!(report["results"]["is_k_local_equilibrium"], false);
}

#[test]
fn check_subcommand_reports() {
    let coalition = {
        let out = bin()
            .args(["construct", "--name", "coalition_example"])
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    let out = run_with_stdin(
        bin().args(["check", "--thm1", "--rule", "2,1", "--certify"]),
        &coalition,
    );
    let report = json_of(&out);
    assert_eq!(report["results"]["flip_mask"], "000");
    assert_eq!(report["results"]["global"]["holds"], false);
    assert_eq!(report["results"]["global"]["threshold"]["exact"], "2/3");
    assert_eq!(report["results"]["certificate"]["verdict"], "certified");
    assert_eq!(
        report["results"]["certificate"]["layers"]["1"],
        "brute_force"
    );
    assert_eq!(
        report["results"]["certificate"]["layers"]["2"],
        serde_json::json!({"rule": [2, 1]})
    );

    let out = run_with_stdin(bin().args(["check", "--local", "1"]), &intro_json());
    let report = json_of(&out);
    assert_eq!(report["results"]["local"]["holds"], true);
    assert_eq!(report["results"]["local"]["threshold"]["exact"], "1/2");
}

#[test]
fn construct_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sharp.json");
    let out = bin()
        .args([
            "construct",
            "--name",
            "no_equilibrium_odd",
            "--d",
            "5",
            "--eps",
            "1/10",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let report = json_of(&out);
    assert_eq!(report["results"]["d"], 5);

    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = cubevote::io::parse_distribution_str(&text).unwrap();
    let expect = cubevote::constructions::no_equilibrium_odd(5, &cubevote::rat(1, 10)).unwrap();
    assert_eq!(parsed, expect);
}

#[test]
fn dynamics_formats() {
    let out = run_with_stdin(
        bin().args([
            "dynamics",
            "--init",
            "000,000",
            "--rule",
            "global",
            "--max-steps",
            "100",
        ]),
        &intro_json(),
    );
    let report = json_of(&out);
    assert_eq!(report["results"]["outcome"]["kind"], "cycle");
    assert_eq!(report["results"]["outcome"]["entry_index"], 1);
    assert_eq!(report["results"]["outcome"]["period"], 6);
    assert_eq!(report["results"]["states"][1]["pos1"], "111");
    assert_eq!(report["results"]["states"][1]["p1"]["exact"], "3/5");

    let out = run_with_stdin(
        bin().args([
            "dynamics",
            "--init",
            "000,000",
            "--rule",
            "nearest",
            "--max-steps",
            "100",
            "--format",
            "csv",
        ]),
        &intro_json(),
    );
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,mover,pos1,pos2,p1,p2"));
    assert_eq!(lines.next(), Some("0,player1,000,000,1/2,1/2"));
    assert_eq!(lines.next(), Some("1,player2,111,000,3/5,2/5"));
}

#[test]
fn mixprod_sweep_csv() {
    let out = bin()
        .args([
            "mixprod", "--alpha", "2/3", "--p1", "1/5", "--p2", "3/5", "--sweep", "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("d,a_d,a_d_approx,best_response"));
    assert!(lines.next().unwrap().starts_with("0,1/2,"));
    assert!(lines.next().unwrap().starts_with("1,7/15,"));

    let out = bin()
        .args([
            "mixprod", "--alpha", "2/3", "--p1", "1/5", "--p2", "3/5", "--classify", "11",
        ])
        .output()
        .unwrap();
    let report = json_of(&out);
    assert_eq!(report["results"]["verdict"], "antipodal_best_response");
    assert_eq!(report["results"]["argmax_k"], 11);
    assert_eq!(report["results"]["marginal_zero"]["exact"], "8/15");
}

#[test]
fn input_errors_exit_2() {
    // Missing file.
    let out = bin()
        .args(["payoff", "--dist", "/nonexistent.json", "--a", "1", "--b", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("structured error report");
    assert_eq!(err["error"], "input");

    // Bad vertex length.
    let out = run_with_stdin(
        bin().args(["payoff", "--a", "11", "--b", "000"]),
        &intro_json(),
    );
    assert_eq!(out.status.code(), Some(2));

    // Weights that do not sum to 1.
    let bad = r#"{"d":2,"weights":[{"vertex":"00","weight":"1/2"},{"vertex":"11","weight":"2/5"}]}"#;
    let out = run_with_stdin(bin().args(["payoff", "--a", "00", "--b", "11"]), bad);
    assert_eq!(out.status.code(), Some(2));

    // Unknown construction name.
    let out = bin()
        .args(["construct", "--name", "mystery"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Balanced distribution has no majority point for the k-local verdict.
    let uniform = {
        let out = bin()
            .args(["construct", "--name", "uniform", "--d", "2"])
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    let out = run_with_stdin(bin().args(["equilibria", "--k-local", "1"]), &uniform);
    assert_eq!(out.status.code(), Some(2));

    // clap usage errors share the input-error code.
    let out = bin().args(["payoff", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimension_gates_exit_3() {
    // A 13-dimensional point mass parses (cap 16) but the equilibrium scan
    // is gated at 12.
    let d13 = format!(
        r#"{{"d":13,"weights":[{{"vertex":"{}","weight":"1"}}]}}"#,
        "0".repeat(13)
    );
    let out = run_with_stdin(bin().arg("equilibria"), &d13);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "gated");

    // The scan cap can be raised through the environment.
    let out = run_with_stdin(bin().arg("equilibria").env("CUBEVOTE_SCAN_CAP", "13"), &d13);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["count"], 1);

    // Construction above the dimension cap is gated as well.
    let d17 = format!(
        r#"{{"d":17,"weights":[{{"vertex":"{}","weight":"1"}}]}}"#,
        "0".repeat(17)
    );
    let out = run_with_stdin(bin().arg("majority"), &d17);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn weight_strings_round_trip_through_reports() {
    // A report's exact payoff string re-parses to the same rational a fresh
    // computation produces.
    let out = run_with_stdin(
        bin().args(["payoff", "--a", "111", "--b", "000"]),
        &intro_json(),
    );
    let report = json_of(&out);
    let exact = report["results"]["p1"]["exact"].as_str().unwrap();
    let reparsed = cubevote::io::parse_rational(exact).unwrap();
    let dist = cubevote::constructions::intro_example();
    let fresh = cubevote::game::payoff(
        &dist,
        cubevote::cube::Vertex::from_bitstring("111", 3).unwrap(),
        cubevote::cube::Vertex::ZERO,
    );
    assert_eq!(reparsed, fresh);
}
