use onlinecover::engine::parse_trace_csv;
use onlinecover::instance::parse_instance;
use onlinecover_cli::{cli_main_with, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE};
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("onlinecover").chain(args.iter().copied());
    let code = cli_main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .parse()
        .unwrap()
}

#[test]
fn optimize_f_prints_the_constant() {
    let (code, out, _) = run(&["optimize-f", "--tol", "1e-6"]);
    assert_eq!(code, EXIT_OK);
    assert!((value(&out, "k") - 1.1997).abs() < 5e-4);
    assert!((value(&out, "beta") - 1.9006).abs() < 5e-4);
}

#[test]
fn verify_identities_passes() {
    let (code, out, _) = run(&["verify", "--suite", "identities"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("ode_residual"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_everything() {
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("double_cover_vs_brute_force"));
    assert!(out.contains("max_inv2_slack"));
}

#[test]
fn simulate_writes_a_parseable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trace.csv");
    let (code, out, err) = run(&[
        "simulate",
        "--gen",
        "triangular:1000",
        "--algo",
        "primal-dual",
        "--f",
        "optimal",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let ratio = value(&out, "matching_ratio");
    assert!((0.5259..=0.6322).contains(&ratio), "{ratio}");
    let parsed = parse_trace_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(parsed.rows.len(), 1);
    assert!(parsed.summary.iter().any(|(k, _)| k == "cover_ratio"));
}

#[test]
fn simulate_from_file_with_prefixes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.txt");
    std::fs::write(&path, "# a star\noffline 1\n0 1 L 0\n1 1 R 1 0\n2 1 R 1 0\n").unwrap();
    let csv = dir.path().join("star.csv");
    let (code, out, err) = run(&[
        "simulate",
        "--input",
        path.to_str().unwrap(),
        "--algo",
        "greedy",
        "--prefix",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(value(&out, "cover_ratio"), 2.0);
    let parsed = parse_trace_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(parsed.rows.len(), 3);
}

#[test]
fn adversary_reports_budget_and_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let transcript = dir.path().join("adv.txt");
    let csv = dir.path().join("adv.csv");
    let (code, out, err) = run(&[
        "adversary",
        "--budget",
        "2,40",
        "--algo",
        "waterfill",
        "--f",
        "linear-alpha",
        "--transcript",
        transcript.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(value(&out, "per_phase_cap"), 800.0);
    let ratio = value(&out, "worst_cover_ratio");
    let stream = parse_instance(&std::fs::read_to_string(&transcript).unwrap()).unwrap();
    assert!(stream.is_labeled_bipartite());
    let parsed = parse_trace_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(parsed.rows.len(), stream.len());
    let replayed = parsed
        .summary
        .iter()
        .find(|(k, _)| k == "worst_cover_ratio")
        .map(|(_, v)| v.parse::<f64>().unwrap())
        .unwrap();
    assert_eq!(replayed, ratio);
}

#[test]
fn ski_rental_default_spec() {
    let (code, out, err) = run(&["ski-rental"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(value(&out, "offline_optimum_reduction"), 100.0);
    assert_eq!(value(&out, "offline_optimum_direct"), 100.0);
    assert!(value(&out, "worst_prefix_ratio") <= 1.5820);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["simulate"],
        vec!["simulate", "--gen", "hexagon:3"],
        vec!["simulate", "--gen", "triangular:3", "--algo", "simplex"],
        vec!["simulate", "--gen", "triangular:3", "--f", "cubic"],
        vec!["simulate", "--gen", "triangular:3", "--eps", "0"],
        vec!["simulate", "--gen", "triangular:3", "--input", "x.txt"],
        vec!["simulate", "--input", "/nonexistent/instance.txt"],
        vec!["adversary", "--budget", "0,5"],
        vec!["optimize-f", "--tol", "-1"],
        vec!["ski-rental", "--spec", "100,0,5"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_instance_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "offline 0\n0 1.0 - 1 1\n").unwrap();
    let (code, _, err) = run(&["simulate", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn invariant_exit_code_is_distinct() {
    assert_ne!(EXIT_INVARIANT, EXIT_USAGE);
    assert_ne!(EXIT_INVARIANT, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_onlinecover");
    let ok = Command::new(bin).args(["optimize-f"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("beta"));
    let bad = Command::new(bin).args(["simulate", "--gen", "nope:1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("ski-rental"));
}
