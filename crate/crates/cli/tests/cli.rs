//! End-to-end tests of the `catenoid` binary: exit statuses, output
//! determinism, JSON round-trips and the boundary-data workflow.

use std::path::PathBuf;
use std::process::{Command, Output};

fn catenoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catenoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("catenoid-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file written");
    path
}

#[test]
fn constants_prints_the_solved_values() {
    let out = catenoid(&["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1.199678640258e0"), "{text}");
    assert!(text.contains("4.604850882501e-1"), "{text}");
    assert!(text.contains("4.392288398906e-1"), "{text}");
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let args = [
        "index", "--grid-n", "257", "--modes", "4", "--format", "json",
    ];
    let first = catenoid(&args);
    let second = catenoid(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    let text = stdout(&first);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(
        catenoid_cli::emit::to_json(&value),
        text,
        "parse + re-serialize must reproduce the bytes"
    );
    assert_eq!(value["total"], 4);
    assert_eq!(value["per_mode"][0], 2);
    assert_eq!(value["per_mode"][1], 1);
    assert_eq!(value["converged"], true);
}

#[test]
fn spectrum_csv_has_parseable_rows() {
    let out = catenoid(&[
        "spectrum", "--grid-n", "129", "--modes", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("mode,family,k,value"));
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4, "{line}");
        fields[0].parse::<usize>().expect("mode");
        fields[3].parse::<f64>().expect("value");
        rows += 1;
    }
    // 3 modes x (3 dirichlet + 3 robin) + steklov (1 + 2 + 2).
    assert_eq!(rows, 23);
}

#[test]
fn chart_flag_switches_the_mode_problem() {
    let s = catenoid(&[
        "spectrum", "--grid-n", "129", "--modes", "2", "--format", "json",
    ]);
    let phi = catenoid(&[
        "spectrum", "--grid-n", "129", "--modes", "2", "--format", "json", "--chart", "phi",
    ]);
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(phi.status.code(), Some(0));
    let sv: serde_json::Value = serde_json::from_str(&stdout(&s)).unwrap();
    let pv: serde_json::Value = serde_json::from_str(&stdout(&phi)).unwrap();
    assert_eq!(sv["chart"], "s");
    assert_eq!(pv["chart"], "phi");
    // Different weight, different Robin eigenvalues; same Steklov engine.
    assert_ne!(sv["modes"][0]["robin"], pv["modes"][0]["robin"]);
    assert_eq!(sv["modes"][1]["steklov"], pv["modes"][1]["steklov"]);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        catenoid(&["verify", "--grid-n", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(catenoid(&["index", "--modes", "1"]).status.code(), Some(2));
    assert_eq!(catenoid(&["index", "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(catenoid(&["index", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(catenoid(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        catenoid(&["spectrum", "--chart", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(catenoid(&["dirichlet"]).status.code(), Some(2));
    assert_eq!(catenoid(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_on_an_adequate_grid() {
    let out = catenoid(&["verify", "--grid-n", "256", "--modes", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("12 passed, 0 failed, 0 not-converged"),
        "{text}"
    );
}

#[test]
fn verify_reports_non_convergence_on_an_undersized_grid() {
    let out = catenoid(&["verify", "--grid-n", "64", "--modes", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("NOT-CONVERGED"));
}

#[test]
fn verify_json_is_deterministic() {
    let args = [
        "verify", "--grid-n", "128", "--modes", "3", "--format", "json",
    ];
    let first = catenoid(&args);
    let second = catenoid(&args);
    assert_eq!(first.stdout, second.stdout);
    let value: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(value["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn dirichlet_solves_and_reports_flux() {
    let path = temp_file(
        "good.csv",
        "mode,cos_or_sin,value_at_plusT,value_at_minusT\n0,cos,1.0,-1.0\n1,cos,0.7,0.3\n",
    );
    let out = catenoid(&["dirichlet", path.to_str().unwrap(), "--grid-n", "257"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("kernel flux"), "{text}");

    let path = temp_file(
        "good2.csv",
        "mode,cos_or_sin,value_at_plusT,value_at_minusT\n0,cos,1.0,-1.0\n1,cos,0.7,0.3\n",
    );
    let json_out = catenoid(&[
        "dirichlet",
        path.to_str().unwrap(),
        "--grid-n",
        "257",
        "--format",
        "json",
    ]);
    std::fs::remove_file(&path).ok();
    let value: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let flux = value["flux"].as_f64().unwrap();
    assert!(flux.abs() <= 1e-8, "flux {flux}");
    assert_eq!(value["components"].as_array().unwrap().len(), 2);
    assert_eq!(value["nodes"].as_array().unwrap().len(), 257);
}

#[test]
fn dirichlet_rejects_constant_data_as_not_solvable() {
    let path = temp_file(
        "const.csv",
        "mode,cos_or_sin,value_at_plusT,value_at_minusT\n0,cos,1.0,1.0\n",
    );
    let out = catenoid(&["dirichlet", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NOT_SOLVABLE"));
}

#[test]
fn dirichlet_input_errors_exit_2() {
    assert_eq!(
        catenoid(&["dirichlet", "/nonexistent/boundary.csv"])
            .status
            .code(),
        Some(2)
    );
    let path = temp_file("noheader.csv", "0,cos,1.0,-1.0\n");
    let out = catenoid(&["dirichlet", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("header"));
}

#[test]
fn report_bundles_all_sections() {
    let out = catenoid(&[
        "report", "--grid-n", "256", "--modes", "4", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    for section in ["constants", "spectrum", "index", "verification"] {
        assert!(value.get(section).is_some(), "missing section {section}");
    }
    assert_eq!(value["index"]["total"], 4);
    assert_eq!(
        catenoid_cli::emit::to_json(&value),
        text,
        "report JSON must round-trip byte-identically"
    );
}
