//! Exercises the binary end to end: the exit-code contract (0 success,
//! 1 negative answer, 2 usage/parse error, 3 failed check), output formats,
//! and the certificate document round trip through the filesystem.

use std::process::{Command, Output};

use qideal::ideals::BezoutCertificate;
use qideal::links::{z_a_generator, ColorSpec, LinkClass};

fn qideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qideal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn gen_prints_factored_and_expanded_forms() {
    let out = qideal(&["gen", "br-cap-a", "1", "1", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "Phi(1) * Phi(2) * Phi(3)");

    let out = qideal(&["gen", "alg", "2", "2", "2", "2", "--expand"]);
    assert_eq!(exit_code(&out), 0);
    let spec = ColorSpec::new(LinkClass::AlgSplit, vec![2, 2, 2, 2]).unwrap();
    assert_eq!(
        stdout(&out).trim(),
        z_a_generator(&spec).unwrap().to_string()
    );

    let out = qideal(&["gen", "alg", "0", "0"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = qideal(&["gen", "rb", "3", "3", "3"]);
    assert_eq!(
        stdout(&out).trim(),
        "Phi(1)^9 * Phi(2)^4 * Phi(3) * Phi(4) * Phi(5) * Phi(6) * Phi(7)"
    );
}

#[test]
fn gen_rejects_invalid_specs() {
    // Brunnian classes need at least three components.
    assert_eq!(exit_code(&qideal(&["gen", "br", "1", "1"])), 2);
    assert_eq!(exit_code(&qideal(&["gen", "bogus", "1"])), 2);
    assert_eq!(exit_code(&qideal(&["gen", "alg"])), 2);
}

#[test]
fn gen_json_is_structured() {
    let out = qideal(&["gen", "alg", "2", "2", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["class"], "alg");
    assert_eq!(doc["exponents"]["1"], 2);
    assert_eq!(
        doc["factored"],
        "Phi(1)^2 * Phi(2) * Phi(3) * Phi(4) * Phi(5)"
    );
    // The expanded string round-trips through the parser.
    let expanded = doc["expanded"].as_str().unwrap();
    assert!(qideal::poly::LaurentPoly::parse(expanded).is_ok());
}

#[test]
fn factor_reports_units_cyclotomics_and_residual() {
    let out = qideal(&["factor", "q^5-1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "Phi(1) * Phi(5)");

    let out = qideal(&["factor", "q^2+q+2"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "2 + q + q^2");

    let out = qideal(&["factor", "-q^-2*(q-1)*(q+1)"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "-q^-2 * Phi(1) * Phi(2)");

    // Parse errors and the zero polynomial are usage errors.
    assert_eq!(exit_code(&qideal(&["factor", "q^"])), 2);
    assert_eq!(exit_code(&qideal(&["factor", "q - q"])), 2);
}

#[test]
fn member_exit_codes_separate_answers_from_errors() {
    let milnor3 = "-q^-2*(q-1)*(q+1)*(q^2+q+1)";

    let out = qideal(&["member", milnor3, "br-cap-a", "1", "1", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("cofactor"));

    let out = qideal(&["member", milnor3, "rb", "1", "1", "1"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("Phi(1) requires exponent 3, found 1 (deficit 2)"));

    let out = qideal(&["member", "0", "alg", "1", "1"]);
    assert_eq!(exit_code(&out), 0);

    assert_eq!(exit_code(&qideal(&["member", "q", "bogus", "1"])), 2);
    assert_eq!(exit_code(&qideal(&["member", "2x", "alg", "1"])), 2);
}

#[test]
fn member_json_reports_deficits() {
    let out = qideal(&[
        "member",
        "-q^-2*(q-1)*(q+1)*(q^2+q+1)",
        "rb",
        "1",
        "1",
        "1",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 1);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["member"], false);
    assert_eq!(doc["deficits"][0]["m"], 1);
    assert_eq!(doc["deficits"][0]["required"], 3);
    assert_eq!(doc["deficits"][0]["present"], 1);
}

#[test]
fn witness_documents_round_trip() {
    let out = qideal(&["witness", "0", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let cert = BezoutCertificate::from_json(stdout(&out).trim()).unwrap();
    assert_eq!(cert.l, 0);
    assert_eq!(cert.coefficients.len(), 1);
    assert!(qideal::ideals::verify_certificate(&cert));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness-5.json");
    let out = qideal(&["witness", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("generator = Phi(1)^5 * Phi(2)^2 * Phi(3)"));

    let text = std::fs::read_to_string(&path).unwrap();
    let cert = BezoutCertificate::from_json(&text).unwrap();
    assert_eq!(cert.l, 5);
    assert!(qideal::ideals::verify_certificate(&cert));

    // The stored document passes the checker command ...
    let out = qideal(&["check", "--certificate-file", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("OK"));

    // ... and a content-tampered document fails it with exit 3.
    let tampered = text.replace("\"l\": 5", "\"l\": 6");
    let bad_path = dir.path().join("tampered.json");
    std::fs::write(&bad_path, tampered).unwrap();
    let out = qideal(&["check", "--certificate-file", bad_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);

    // Unwritable output path is a usage error.
    let out = qideal(&["witness", "3", "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(exit_code(&out), 2);

    // Negative levels never parse.
    assert_eq!(exit_code(&qideal(&["witness", "-1"])), 2);
}

#[test]
fn check_sweeps_report_per_suite() {
    let out = qideal(&["check", "--l-max", "6"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("poly-ring-axioms: OK"));
    assert!(text.contains("generator-exponents: OK"));
    assert!(text.contains("t-table: OK"));

    let out = qideal(&["check", "--l-max", "0"]);
    assert_eq!(exit_code(&out), 0);

    let out = qideal(&[
        "check",
        "--l-max",
        "4",
        "--certificates",
        "--jobs",
        "2",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let suites: Vec<&str> = doc
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert!(suites.contains(&"certificates"));
    assert!(suites.contains(&"link-fixtures"));
}

#[test]
fn check_default_includes_full_table() {
    let out = qideal(&["check", "--l-max", "16"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("t-table: OK (68 cells)"));
}

#[test]
fn table_output_is_stable() {
    let out = qideal(&["table"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(
        lines[0],
        "m\\l   0  1  2  3  4  5  6  7  8  9 10 11 12 13 14 15 16"
    );
    assert_eq!(
        lines[1],
        "1     0  1  2  3  4  5  6  7  8  9 10 11 12 13 14 15 16"
    );
    assert_eq!(
        lines[2],
        "2     0  0  0  1  1  2  2  3  3  4  4  5  5  6  6  7  7"
    );
    assert_eq!(
        lines[3],
        "3     0  0  0  0  0  1  1  1  2  2  2  3  3  3  4  4  4"
    );
    assert_eq!(
        lines[4],
        "4     0  0  0  0  0  0  0  1  1  1  1  2  2  2  2  3  3"
    );

    let out = qideal(&["table", "0", "4"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "m\\l  0");
    for (i, line) in lines[1..].iter().enumerate() {
        assert_eq!(*line, format!("{:<3}  0", i + 1));
    }

    let out = qideal(&["table", "16", "1"]);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[1],
        "1     0  1  2  3  4  5  6  7  8  9 10 11 12 13 14 15 16"
    );

    let out = qideal(&["table", "5", "3", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["rows"][0], serde_json::json!([0, 1, 2, 3, 4, 5]));
    assert_eq!(doc["rows"][1], serde_json::json!([0, 0, 0, 1, 1, 2]));
}
