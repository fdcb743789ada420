use std::process::Command;

use cy3_cli::run;
use cy3_core::{MatFp, Report};

fn report(args: &[&str]) -> (Report, i32) {
    let mut argv = vec!["cy3"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (Report::from_json(&out.stdout).unwrap(), out.status)
}

fn check<'a>(r: &'a Report, name: &str) -> &'a cy3_core::Check {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn d2_kernel_dimension() {
    let (r, status) = report(&["hirokado", "d2"]);
    assert_eq!(status, 0);
    assert!(check(&r, "kernel_dim = 41").pass);
    assert_eq!(r.results["kernel_dim"], 41);
}

#[test]
fn invariants_for_p5() {
    let (r, status) = report(&["invariants", "--p", "5"]);
    assert_eq!(status, 0);
    assert_eq!(r.results["basis_high"].as_array().unwrap().len(), 2);
    assert!(check(&r, "dims").pass);
}

#[test]
fn k3_lines_and_planes() {
    let (r, status) = report(&["k3", "lines", "--p", "2"]);
    assert_eq!(status, 0);
    assert_eq!(r.results["lines"], 27);
    assert_eq!(r.results["planes_per_line"], 5);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    for args in [
        ["hirokado", "gauss", "--samples", "50"].as_slice(),
        &["lift", "--p", "3"],
        &["k3", "periods", "--sigma0", "1"],
    ] {
        let mut argv = vec!["cy3"];
        argv.extend_from_slice(args);
        let a = run(argv.clone());
        let b = run(argv);
        assert_eq!(a, b);
        let r = Report::from_json(&a.stdout).unwrap();
        assert_eq!(r.to_json() + "\n", a.stdout);
    }
}

#[test]
fn seed_changes_samples_only() {
    let (a, _) = report(&["hirokado", "gauss", "--samples", "30", "--seed", "1"]);
    let (b, _) = report(&["hirokado", "gauss", "--samples", "30", "--seed", "2"]);
    assert_eq!(a.params["seed"], 1);
    assert!(a
        .checks
        .iter()
        .zip(&b.checks)
        .all(|(x, y)| x.pass && y.pass));
}

#[test]
fn exit_status_on_failed_check_and_usage() {
    // the p = 3 lift does not satisfy the congruence for every P
    let (r, status) = report(&["lift", "--p", "3", "--n", "2"]);
    assert_eq!(status, 1);
    assert!(!check(&r, "(I+N+pP)^p = I+pN mod p^2 in every trial").pass);
    assert!(check(&r, "agrees with the binomial expansion").pass);

    for bad in [
        vec!["cy3", "nope"],
        vec!["cy3", "invariants"],
        vec!["cy3", "invariants", "--p", "11"],
        vec![
            "cy3",
            "ci-chi",
            "--ambient",
            "5",
            "--degrees",
            "2,4",
            "--j",
            "3",
        ],
        vec!["cy3", "k3", "periods", "--sigma0", "5"],
        vec!["cy3", "hirokado", "d2", "--format", "xml"],
        vec![
            "cy3",
            "dickson",
            "--n",
            "3",
            "--p",
            "3",
            "--dump",
            "/tmp/never-written",
        ],
    ] {
        let out = run(bad.clone());
        assert_eq!(out.status, 2, "{bad:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn csv_and_text_formats() {
    let out = run(["cy3", "k3", "tritangent", "--format", "csv"]);
    assert_eq!(out.status, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "command,name,expected,actual,pass");
    assert_eq!(lines.len(), 3);
    let out = run(["cy3", "k3", "isotropic", "--format", "text"]);
    assert!(out
        .stdout
        .contains("PASS   nonzero isotropic: expected 27, got 27"));
}

#[test]
fn dump_writes_matrix_text() {
    let path = std::env::temp_dir().join(format!("cy3-dump-{}.txt", std::process::id()));
    let out = run(["cy3", "hirokado", "d2", "--dump", path.to_str().unwrap()]);
    assert_eq!(out.status, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("130 126 3\n"));
    let m = MatFp::from_text(&text).unwrap();
    assert_eq!(m.rank(), 89);
    std::fs::remove_file(&path).ok();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cy3");
    let ok = Command::new(bin)
        .args(["dickson", "--n", "2", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let fail = Command::new(bin)
        .args(["lift", "--trials", "20", "--threads", "2"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
}
