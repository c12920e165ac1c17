use std::path::PathBuf;
use std::process::Command;

use sharpgpt::cli::{self, run_command};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["sharpgpt"];
    argv.extend_from_slice(args);
    let code = run_command(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn qubit_golden() {
    let path = fixture("qubit_two_slit.json");
    let (code, out, _) = run(&["interference", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        std::fs::read_to_string(fixture("qubit_two_slit.tsv")).unwrap()
    );
    assert!(out.contains("I_2\t0.500000000000\n"));
}

#[test]
fn tables_give_exact_values() {
    for (name, last) in [
        ("table_zero.json", "I_3\t0.000000000000\n"),
        ("table_one.json", "I_3\t1.000000000000\n"),
        ("table_minus_one.json", "I_3\t-1.000000000000\n"),
    ] {
        let path = fixture(name);
        let (code, out, _) = run(&["table", path.to_str().unwrap(), "--order", "3"]);
        assert_eq!(code, 0, "{name}");
        assert!(out.ends_with(last), "{name}: {out}");
        let table = cli::parse_table(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let reparsed = cli::emit_report(&cli::table_report(&table, 3).unwrap());
        assert_eq!(reparsed, out);
    }
}

#[test]
fn empty_order_prints_header() {
    let path = fixture("table_one.json");
    let (code, out, _) = run(&["table", path.to_str().unwrap(), "--order", "0"]);
    assert_eq!((code, out.as_str()), (0, "subset\tvalue\n"));
}

#[test]
fn scan_qutrit_third_order() {
    let path = fixture("qutrit.json");
    let (code, out, _) = run(&[
        "scan",
        path.to_str().unwrap(),
        "--order",
        "3",
        "--trials",
        "50",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0, "{out}");
    let best: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("best\t"))
        .unwrap()
        .parse()
        .unwrap();
    assert!(best <= 1e-8);
}

#[test]
fn scan_flags_violation_with_negative_tolerance() {
    let path = fixture("qutrit.json");
    let (code, _, _) = run(&[
        "scan",
        path.to_str().unwrap(),
        "--order",
        "3",
        "--trials",
        "2",
        "--tol=-1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn verify_passes() {
    for name in ["qutrit.json", "classical4.json"] {
        let path = fixture(name);
        let (code, out, _) = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn verify_reports_violations() {
    let path = fixture("qutrit.json");
    let (code, out, _) = run(&["verify", path.to_str().unwrap(), "--tol", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let albert = fixture("albert.json");
    let (code, _, err) = run(&["verify", albert.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("unsupported kind"));
    let (code, _, _) = run(&[
        "scan",
        fixture("qutrit.json").to_str().unwrap(),
        "--order",
        "4",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["table"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_matches_library() {
    let path = fixture("qubit_two_slit.json");
    let output = Command::new(env!("CARGO_BIN_EXE_sharpgpt"))
        .args(["interference", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        std::fs::read_to_string(fixture("qubit_two_slit.tsv")).unwrap()
    );
    let status = Command::new(env!("CARGO_BIN_EXE_sharpgpt"))
        .args(["verify", fixture("albert.json").to_str().unwrap()])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}
