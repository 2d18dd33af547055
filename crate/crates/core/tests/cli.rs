//! End-to-end checks of the `apdensity` binary: exit codes, report
//! determinism, and a generate/consume round trip through the file formats.

use std::process::{Command, Output};

fn apdensity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apdensity"))
        .args(args)
        .output()
        .expect("spawn apdensity")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// JSON reports with the same inputs agree byte-for-byte once the
/// `runtime_ms` field is dropped.
fn strip_runtime(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains("\"runtime_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn density_formula_report_is_deterministic() {
    let args = [
        "density-formula",
        "--scheme",
        "int-cyclic",
        "--modulus",
        "5",
        "--window",
        "0",
        "1",
        "--n",
        "50",
    ];
    let a = apdensity(&args);
    let b = apdensity(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(strip_runtime(&stdout(&a)), strip_runtime(&stdout(&b)));
    let report = stdout(&a);
    assert!(report.contains("\"empirical\": \"2/5\""), "{report}");
}

#[test]
fn gen_modelset_boundary_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let patch = dir.path().join("patch.txt");
    let out = apdensity(&[
        "gen-modelset",
        "--scheme",
        "int-cyclic",
        "--modulus",
        "5",
        "--window",
        "0",
        "1",
        "--range",
        "0",
        "40",
        "--out",
        patch.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&patch).unwrap();
    assert!(text.starts_with("# group=Z1 d=1"), "{text}");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 16);

    // consume the generated patch as the A of a boundary computation
    let kfile = dir.path().join("k.txt");
    std::fs::write(&kfile, "# group=Z1 d=1\n-1\n0\n1\n").unwrap();
    let bfile = dir.path().join("b.txt");
    let out = apdensity(&[
        "boundary",
        "--kind",
        "folner",
        "--k",
        kfile.to_str().unwrap(),
        "--a",
        patch.to_str().unwrap(),
        "--out",
        bfile.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let boundary = std::fs::read_to_string(&bfile).unwrap();
    // Λ_W ∩ [0,40) for W = {0,1} mod 5 is ⋃ {5k, 5k+1}; K = {-1,0,1} adds
    // {5k-1, 5k+2} and removes nothing, so the boundary has 16 points
    assert_eq!(boundary.lines().filter(|l| !l.starts_with('#')).count(), 16);
}

#[test]
fn verify_exit_codes() {
    let ok = apdensity(&["verify", "--suite", "thickening", "--cases", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    let usage = apdensity(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(usage.status.code(), Some(2));
    let parse = apdensity(&["density-formula", "--scheme", "fib", "--window", "zzz", "1", "--n", "10"]);
    assert_eq!(parse.status.code(), Some(2));
}

#[test]
fn folner_ratio_csv_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let kfile = dir.path().join("k.txt");
    std::fs::write(&kfile, "# group=R d=1\n-1/10 1/10\n").unwrap();
    let out = apdensity(&[
        "folner-ratio",
        "--seq",
        "comb:1/10",
        "--k",
        kfile.to_str().unwrap(),
        "--ns",
        "10,100",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = stdout(&out);
    // (2εn + 1 + 2ε − 1/n)/(n−1) at ε = 1/10: 31/90 and 2119/9900
    assert!(csv.contains("10,31/90"), "{csv}");
    assert!(csv.contains("100,2119/9900"), "{csv}");
}
