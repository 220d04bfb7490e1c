//! Golden-file and exit-code contract tests for every subcommand.
//!
//! Outputs are serialized with 17 significant digits, so a byte comparison
//! against the checked-in goldens is exact. Regenerate the goldens by
//! rerunning the commands listed here after an intentional change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_nabla-bvp")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn CLI")
}

fn assert_golden(name: &str, args: &[&str], expected_code: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(expected_code),
        "exit code for {args:?}"
    );
    let stdout = String::from_utf8(out.stdout).expect("utf-8 stdout");
    assert_eq!(
        stdout,
        golden(name),
        "stdout of {args:?} diverged from {name}"
    );
    println!("golden {name}: PASS");
}

#[test]
fn golden_bounds() {
    assert_golden(
        "bounds_left.json",
        &[
            "bounds", "--kind", "left", "--a", "0", "--b", "4", "--alpha", "1.5",
        ],
        0,
    );
    assert_golden(
        "bounds_right.json",
        &[
            "bounds", "--kind", "right", "--a", "0", "--b", "4", "--alpha", "1.5",
        ],
        0,
    );
}

#[test]
fn golden_greens() {
    assert_golden(
        "greens_right.json",
        &[
            "greens", "--kind", "right", "--a", "0", "--b", "4", "--alpha", "1.5",
        ],
        0,
    );
    assert_golden(
        "greens_left.csv",
        &[
            "greens", "--kind", "left", "--a", "0", "--b", "4", "--alpha", "1.5", "--format", "csv",
        ],
        0,
    );
}

#[test]
fn golden_solve() {
    let h_const = fixtures().join("h_const.csv");
    let h_delta = fixtures().join("h_delta.json");
    assert_golden(
        "solve_right.json",
        &[
            "solve",
            "--kind",
            "right",
            "--a",
            "0",
            "--b",
            "4",
            "--alpha",
            "1.5",
            "--input",
            h_const.to_str().unwrap(),
        ],
        0,
    );
    assert_golden(
        "solve_left.json",
        &[
            "solve",
            "--kind",
            "left",
            "--a",
            "0",
            "--b",
            "4",
            "--alpha",
            "1.5",
            "--input",
            h_delta.to_str().unwrap(),
        ],
        0,
    );
}

#[test]
fn golden_eigen() {
    assert_golden(
        "eigen_left.json",
        &[
            "eigen", "--kind", "left", "--a", "0", "--b", "5", "--alpha", "1.5",
        ],
        0,
    );
}

#[test]
fn golden_mlzeros() {
    assert_golden(
        "mlzeros_right.json",
        &[
            "mlzeros",
            "--kind",
            "right",
            "--a",
            "0",
            "--b",
            "6",
            "--alpha",
            "1.5",
            "--samples",
            "101",
        ],
        0,
    );
}

#[test]
fn golden_verify() {
    assert_golden("verify.json", &["verify"], 0);
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify"]);
    let b = run(&["verify"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    println!("verify determinism: PASS");
}

#[test]
fn exit_code_contract() {
    // 1: a verification check fails (impossible tolerance); report still emitted
    let h = fixtures().join("h_const.csv");
    let out = run(&[
        "solve",
        "--kind",
        "right",
        "--a",
        "0",
        "--b",
        "4",
        "--alpha",
        "1.5",
        "--input",
        h.to_str().unwrap(),
        "--tol",
        "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(
        stdout.contains("\"pass\":false"),
        "report must still be emitted: {stdout}"
    );

    // 2: order outside (1, 2)
    let out = run(&[
        "bounds", "--kind", "left", "--a", "0", "--b", "4", "--alpha", "2.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    // 2: domain too small for the scan
    let out = run(&[
        "mlzeros", "--kind", "left", "--a", "0", "--b", "2", "--alpha", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // 2: malformed input (gap in the grid)
    let gap = fixtures().join("h_gap.csv");
    let out = run(&[
        "solve",
        "--kind",
        "left",
        "--a",
        "0",
        "--b",
        "4",
        "--alpha",
        "1.5",
        "--input",
        gap.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // 2: missing file
    let out = run(&[
        "solve",
        "--kind",
        "left",
        "--a",
        "0",
        "--b",
        "4",
        "--alpha",
        "1.5",
        "--input",
        "/nonexistent/h.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // 2: clap usage error
    let out = run(&["bounds", "--kind", "left"]);
    assert_eq!(out.status.code(), Some(2));

    println!("exit-code contract: PASS");
}

#[test]
fn csv_solve_round_trips_through_the_binary() {
    // u emitted as CSV re-parses bit-exactly as a grid function
    let h = fixtures().join("h_const.csv");
    let out = run(&[
        "solve",
        "--kind",
        "right",
        "--a",
        "0",
        "--b",
        "4",
        "--alpha",
        "1.5",
        "--input",
        h.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let u = nabla_bvp::io::grid_from_csv(&stdout).unwrap();
    assert_eq!(nabla_bvp::io::grid_to_csv(&u), stdout);
    println!("csv round trip through binary: PASS");
}
