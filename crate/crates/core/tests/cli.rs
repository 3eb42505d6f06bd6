use std::io::Write;
use std::process::{Command, Stdio};

use lattice_trains::cli::run;
use lattice_trains::{parse_network, validate_schedule, Schedule};

const NETWORK1: &str = include_str!("golden/network1_labeled.txt");

fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["trains"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn assignment(out: &str) -> Vec<(String, u64)> {
    out.lines()
        .filter_map(|l| {
            let (label, delay) = l.split_once(' ')?;
            Some((label.to_string(), delay.parse().ok()?))
        })
        .collect()
}

#[test]
fn min_delay_prints_value_and_valid_witness() {
    let (code, out, _) = invoke(&["min-delay"], NETWORK1);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("3"));
    let witness = assignment(&out);
    assert_eq!(witness.iter().map(|(l, _)| l.as_str()).collect::<Vec<_>>(), ["A", "B", "C", "D"]);
    let net = parse_network(NETWORK1).unwrap();
    let s = Schedule::from_integers(witness.iter().map(|(_, d)| *d));
    assert!(validate_schedule(&net, &s).unwrap().is_empty());
}

#[test]
fn feasible_reports_witness_or_infeasible() {
    assert_eq!(invoke(&["feasible", "2"], NETWORK1).0, 1);
    assert_eq!(invoke(&["feasible", "2"], NETWORK1).1, "INFEASIBLE\n");
    let (code, out, _) = invoke(&["feasible", "3"], NETWORK1);
    assert_eq!(code, 0);
    assert_eq!(assignment(&out).len(), 4);
}

#[test]
fn schedule_strategies_and_exit_codes() {
    let (code, out, _) = invoke(&["schedule", "--strategy", "positive"], NETWORK1);
    assert_eq!(code, 0);
    assert_eq!(out, "A 1\nB 2\nC 3\nD 0\nstrategy positive\nbound 3\n");
    let (code, out, _) = invoke(&["schedule"], NETWORK1);
    assert_eq!(code, 0);
    assert!(out.ends_with("strategy positive\nbound 3\n"));
    let (code, out, _) = invoke(&["schedule", "--strategy", "2d"], NETWORK1);
    assert_eq!(code, 0);
    assert!(out.ends_with("bound 7\n"));
    let (code, _, err) = invoke(&["schedule", "--strategy", "3d-unit"], NETWORK1);
    assert_eq!(code, 2);
    assert!(err.contains("3d-unit"));
    let open = "X 2 x+ 0 1 1\nY 2 y- 1 3 1\n";
    let (code, out, _) = invoke(&["schedule", "--strategy", "auto"], open);
    assert_eq!(code, 0);
    assert!(out.ends_with("strategy exact\nbound none\n"));
}

#[test]
fn export_is_byte_exact_and_deterministic() {
    let (code, out, _) = invoke(&["export", "3"], NETWORK1);
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("golden/network1_d3.cliquer"));
    let (_, bare, _) = invoke(&["export", "3"], include_str!("golden/network1.txt"));
    assert_eq!(bare, out);
    assert_eq!(invoke(&["min-delay"], NETWORK1).1, invoke(&["min-delay"], NETWORK1).1);
}

#[test]
fn grid_emits_network1() {
    let (code, out, _) = invoke(&["grid", "2"], "");
    assert_eq!(code, 0);
    assert_eq!(out, NETWORK1);
    assert_eq!(invoke(&["grid", "0"], "").0, 64);
}

#[test]
fn validate_distinguishes_bad_syntax_from_overlap() {
    let (code, out, _) = invoke(&["validate"], NETWORK1);
    assert_eq!((code, out.as_str()), (0, "valid\nlines 4\ndimension 2\nregular true\n"));
    let (code, out, err) = invoke(&["validate"], "A 1 x+ 0 0 0\nB 1 x- 5 0 0\n");
    assert_eq!(code, 1);
    assert_eq!(out, "invalid\n");
    assert!(err.contains("line 2"));
    let (code, _, err) = invoke(&["validate"], "2 w+ 0 0 0\n");
    assert_eq!(code, 65);
    assert!(err.contains("line 1") && err.contains("axis"));
    let (code, _, err) = invoke(&["--quiet", "validate"], "2 w+ 0 0 0\n");
    assert_eq!((code, err.as_str()), (65, ""));
}

#[test]
fn parse_errors_exit_65_on_every_command() {
    for args in [&["min-delay"][..], &["feasible", "1"], &["export", "1"], &["schedule"]] {
        assert_eq!(invoke(args, "A 0 x+ 0 0 0").0, 65, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(invoke(&[], "").0, 64);
    assert_eq!(invoke(&["frobnicate"], "").0, 64);
    assert_eq!(invoke(&["feasible"], "").0, 64);
    assert_eq!(invoke(&["feasible", "-1"], "").0, 64);
    assert_eq!(invoke(&["schedule", "--strategy", "fast"], "").0, 64);
    let (code, out, _) = invoke(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("min-delay"));
}

#[test]
fn irregular_networks_are_unsupported() {
    let mixed = "A 1 x+ 0 1 0\nB 2 y+ 1 0 0\n";
    assert_eq!(invoke(&["min-delay"], mixed).0, 2);
    assert_eq!(invoke(&["export", "1"], mixed).0, 2);
    assert_eq!(invoke(&["schedule"], mixed).0, 2);
}

#[test]
fn check_reads_delays_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let good = dir.join("good.txt");
    std::fs::write(&good, "A 3\nB 0\nC 1\nD 2\n").unwrap();
    let (code, out, _) = invoke(&["check", good.to_str().unwrap()], NETWORK1);
    assert_eq!((code, out.as_str()), (0, "ok\n"));

    let zeros = dir.join("zeros.txt");
    std::fs::write(&zeros, "A 0\nB 0\nC 0\nD 0\n").unwrap();
    let (code, out, _) = invoke(&["check", zeros.to_str().unwrap()], NETWORK1);
    assert_eq!(code, 1);
    assert_eq!(out.lines().count(), 4);
    assert!(out.starts_with("collision A C delta 1 1 delays 0 0\n"));

    let fractional = dir.join("frac.txt");
    std::fs::write(&fractional, "A 3.5\nB 1/2\nC 1.5\nD 2.5\n").unwrap();
    assert_eq!(invoke(&["check", fractional.to_str().unwrap()], NETWORK1).0, 0);

    let missing = dir.join("missing.txt");
    std::fs::write(&missing, "A 3\nB 0\nC 1\n").unwrap();
    let (code, _, err) = invoke(&["check", missing.to_str().unwrap()], NETWORK1);
    assert_eq!(code, 65);
    assert!(err.contains("\"D\""));

    let net_file = dir.join("net.txt");
    std::fs::write(&net_file, NETWORK1).unwrap();
    let (code, out, _) = invoke(&["--file", net_file.to_str().unwrap(), "check", good.to_str().unwrap()], "");
    assert_eq!((code, out.as_str()), (0, "ok\n"));
}

#[test]
fn binary_exit_codes() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trains"))
        .args(["feasible", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(NETWORK1.as_bytes()).unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert_eq!(output.stdout, b"INFEASIBLE\n");

    let output = Command::new(env!("CARGO_BIN_EXE_trains")).arg("bogus").output().unwrap();
    assert_eq!(output.status.code(), Some(64));
}
