//! End-to-end checks of the binary: exit codes, report shape, field-precise
//! input errors, and byte determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gerbedual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixture(verb: &str, name: &str) -> Output {
    run(&[verb, fixture(name).to_str().unwrap()])
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn chartable_reports_c2_degrees() {
    let output = run_fixture("chartable", "group-c2.json");
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["payload"]["degrees"], serde_json::json!([1, 1]));
    assert_eq!(report["provenance"]["dixon_prime"], 3);
    assert!(report["provenance"]["conventions"]["row_order"]
        .as_str()
        .unwrap()
        .contains("degree ascending"));
}

#[test]
fn chartable_handles_all_group_fixtures() {
    let expected: &[(&str, &[u64])] = &[
        ("group-c2.json", &[1, 1]),
        ("group-c3.json", &[1, 1, 1]),
        ("group-c4.json", &[1, 1, 1, 1]),
        ("group-klein.json", &[1, 1, 1, 1]),
        ("group-s3.json", &[1, 1, 2]),
        ("group-d4.json", &[1, 1, 1, 1, 2]),
        ("group-q8.json", &[1, 1, 1, 1, 2]),
        ("group-a4.json", &[1, 1, 1, 3]),
    ];
    for (name, degrees) in expected {
        let output = run_fixture("chartable", name);
        assert_eq!(exit_code(&output), 0, "{name}");
        let report = stdout_json(&output);
        let got: Vec<u64> = report["payload"]["degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|d| d.as_u64().unwrap())
            .collect();
        assert_eq!(&got, degrees, "{name}");
    }
}

#[test]
fn ragged_table_is_an_input_error_naming_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"table": [[0, 1], [1]]}"#).unwrap();
    let output = run(&["chartable", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("row 1"), "stderr: {stderr}");
}

#[test]
fn non_normal_kernel_cites_a_conjugation_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ext.json");
    std::fs::write(
        &path,
        r#"{"total": {"degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}, "kernel": [0, 2]}"#,
    )
    .unwrap();
    let output = run(&["extension", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("not normal"), "stderr: {stderr}");
    assert!(stderr.contains("conjugating"), "stderr: {stderr}");
}

#[test]
fn missing_input_file_is_an_input_error() {
    let output = run(&["chartable", "/nonexistent/group.json"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn valid_datum_passes_and_perturbed_datum_fails_with_named_quadruple() {
    let valid = run_fixture("cocycle-check", "datum-induced.json");
    assert_eq!(exit_code(&valid), 0);
    assert_eq!(stdout_json(&valid)["status"], "pass");

    let perturbed = run_fixture("cocycle-check", "datum-perturbed.json");
    assert_eq!(exit_code(&perturbed), 1);
    let report = stdout_json(&perturbed);
    assert_eq!(report["status"], "fail");
    let violations = report["payload"]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    for violation in violations {
        assert_eq!(violation["check"], "factor-coherence");
        assert_eq!(violation["indices"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn twist_reports_the_full_scalar_map() {
    let output = run_fixture("twist", "ext-q8.json");
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["status"], "pass");
    let scalars = report["payload"]["scalars"].as_object().unwrap();
    // 4 rows x 4^3 ordered triples
    assert_eq!(scalars.len(), 4 * 64);
    for value in scalars.values() {
        assert!(value["coeffs"].is_array());
    }
    // the sign pattern shows up: some scalar equals -1
    let minus_one = serde_json::json!({"order": 4, "coeffs": [[-1, 1], [0, 1]]});
    assert!(scalars.values().any(|v| *v == minus_one));
}

#[test]
fn gerbe_check_reports_the_identity_twist() {
    for name in ["ext-s3.json", "ext-c4.json", "ext-q8.json"] {
        let output = run_fixture("gerbe-check", name);
        assert_eq!(exit_code(&output), 0, "{name}");
        let report = stdout_json(&output);
        assert_eq!(report["payload"]["comparison_twist"], "identity", "{name}");
    }
}

#[test]
fn dual_summary_prints_one_line_per_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = run(&[
        "dual",
        fixture("ext-s3.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let summary = String::from_utf8_lossy(&output.stdout);
    let orbit_lines = summary.lines().filter(|l| l.contains("orbit")).count();
    assert_eq!(orbit_lines, 2, "summary: {summary}");

    let report: Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).expect("report file is JSON");
    assert_eq!(report["payload"]["orbit_count"], 2);
}

#[test]
fn affine_two_point_reports_distinct_unit_vectors() {
    let output = run_fixture("affine-demo", "affine-two-point.json");
    assert_eq!(exit_code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["payload"]["sheaf_unit_vector"], serde_json::json!([1, 1]));
    assert_eq!(
        report["payload"]["representation_unit_vector"],
        serde_json::json!([1, 0])
    );
    assert_eq!(report["payload"]["units_differ"], true);
}

#[test]
fn affine_pair_fixtures_report_expected_map_counts() {
    for (name, count) in [
        ("affine-pair-z2.json", 1),
        ("affine-pair-dual.json", 1),
        ("affine-pair-split.json", 2),
    ] {
        let output = run_fixture("affine-demo", name);
        assert_eq!(exit_code(&output), 0, "{name}");
        let report = stdout_json(&output);
        assert_eq!(report["payload"]["count"], count, "{name}");
        assert_eq!(report["payload"]["round_trip_identity"], true, "{name}");
    }
}

#[test]
fn env_bound_overrides_are_validated_and_enforced() {
    let garbled = Command::new(env!("CARGO_BIN_EXE_gerbedual"))
        .args(["auts", fixture("group-c2.json").to_str().unwrap()])
        .env("GERBEDUAL_AUT_BOUND", "many")
        .output()
        .unwrap();
    assert_eq!(exit_code(&garbled), 2);

    let exceeded = Command::new(env!("CARGO_BIN_EXE_gerbedual"))
        .args(["auts", fixture("group-s3.json").to_str().unwrap()])
        .env("GERBEDUAL_AUT_BOUND", "4")
        .output()
        .unwrap();
    assert_eq!(exit_code(&exceeded), 2);
    let stderr = String::from_utf8_lossy(&exceeded.stderr);
    assert!(stderr.contains("bound"), "stderr: {stderr}");

    let raised = Command::new(env!("CARGO_BIN_EXE_gerbedual"))
        .args(["auts", fixture("group-s3.json").to_str().unwrap()])
        .env("GERBEDUAL_AUT_BOUND", "6")
        .output()
        .unwrap();
    assert_eq!(exit_code(&raised), 0);
    assert_eq!(stdout_json(&raised)["payload"]["count"], 6);
}

#[test]
fn reports_round_trip_and_rerun_byte_identically() {
    for (verb, name) in [
        ("chartable", "group-s3.json"),
        ("extension", "ext-q8.json"),
        ("twist", "ext-c4.json"),
        ("dual", "ext-q8.json"),
        ("affine-demo", "affine-two-point.json"),
    ] {
        let first = run_fixture(verb, name);
        let second = run_fixture(verb, name);
        assert_eq!(first.stdout, second.stdout, "{verb} {name}");

        let report = stdout_json(&first);
        let reserialized: Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(report, reserialized, "{verb} {name}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let piped = run_fixture("extension", "ext-s3.json");
    let written = run(&[
        "extension",
        fixture("ext-s3.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&written), 0);
    assert_eq!(std::fs::read(&out).unwrap(), piped.stdout);
}
