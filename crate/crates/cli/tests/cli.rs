use std::process::{Command, Output};

use num_complex::Complex64;
use qstokes::qconnect::{eval_solution, SolutionId};
use qstokes::qcore::Base;
use qstokes::VerificationReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qstokes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn value(line: &str) -> Complex64 {
    let v: Value = serde_json::from_str(line).unwrap();
    Complex64::new(v["value"][0].as_f64().unwrap(), v["value"][1].as_f64().unwrap())
}

#[test]
fn eval_aq_at_origin() {
    let o = run(&["eval", "--fn", "Aq", "--q", "0.5", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(stdout(&o).trim()), Complex64::new(1.0, 0.0));
}

#[test]
fn eval_theta_zero() {
    let o = run(&["eval", "--fn", "theta", "--q", "0.5", "--x", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(value(stdout(&o).trim()).norm() < 1e-12);
}

#[test]
fn eval_eq_pole_is_rejected() {
    let o = run(&["eval", "--fn", "eq", "--q", "0.5", "--x", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pole at x = q^-1"), "{}", stderr(&o));
}

#[test]
fn eval_phi_and_unknown_function() {
    let o = run(&["eval", "--fn", "phi", "--q", "0.5", "--upper", "0.25", "--lower", "-0.5", "--x", "0.3,0.1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["eval", "--fn", "bogus", "--q", "0.5", "--x", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_qexp_pair_passes() {
    let o = run(&["verify", "--id", "qexp_pair", "--q", "0.5", "--x", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerificationReport = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(r.pass);
    assert_eq!(r.identity_id, "qexp_pair");
}

#[test]
fn verify_ram_qairy_over_grid() {
    let o = run(&["verify", "--id", "ram_qairy", "--q", "0.4", "--grid", "0.3,2,-1,1,5,4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let reports: Vec<VerificationReport> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 20);
    assert!(reports.iter().all(|r| r.pass));
}

#[test]
fn verify_on_excluded_spiral_is_a_domain_error() {
    let o = run(&["verify", "--id", "two_f_zero", "--q", "0.4", "--x", "-0.9", "--lambda", "0.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("excluded spiral"));
}

#[test]
fn verify_generated_points_record_seed_determinism() {
    let args = ["verify", "--id", "two_f_zero", "--q", "0.5", "--lambda", "0,1.3", "--points", "5", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn default_suite_reports_only_row_one() {
    let o = run(&["suite"]);
    // row 1 of the connection matrix does not hold as printed
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let fams = v["families"].as_array().unwrap();
    assert!(fams.len() >= 9);
    let failing: Vec<&str> = fams
        .iter()
        .filter(|f| f["passed"] != f["total"])
        .map(|f| f["identity_id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["main_matrix_row1"]);
    assert_eq!(v["seed"].as_u64(), Some(qstokes::qconnect::suite::DEFAULT_SEED));
}

#[test]
fn suite_precision_floor() {
    let o = run(&["suite", "--q", "0.5", "--tol", "1e-15", "--points", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("failing families"));
}

#[test]
fn suite_domain_guard() {
    let o = run(&["suite", "--q", "0.95"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("precision domain"));
}

#[test]
fn scan_counts_rows() {
    let o = run(&["scan", "--fn", "resum_2f0", "--q", "0.5", "--lambda", "0.9", "--grid", "0.2,1,0.1,0.5,3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("re_x,im_x,re_val,im_val,status"));
    assert_eq!(lines.filter(|l| l.ends_with(",ok")).count(), 9);
}

#[test]
fn scan_across_spiral_marks_excluded() {
    let o = run(&["scan", "--fn", "resum_2f0", "--q", "0.5", "--lambda", "0.9", "--grid", "-2,-0.1,0,0,20,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 21);
    assert!(out.lines().filter(|l| l.ends_with(",excluded")).count() >= 2);
}

#[test]
fn scan_malformed_grid() {
    let o = run(&["scan", "--fn", "Aq", "--q", "0.5", "--grid", "0,1,0,1,0,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stokes_jump_between_two_spirals() {
    let dir = tempfile::tempdir().unwrap();
    let mut cols = Vec::new();
    for (lam, name) in [("0.9", "a.csv"), ("0,1.3", "b.csv")] {
        let path = dir.path().join(name);
        let o = run(&[
            "scan", "--fn", "c21", "--q", "0.5", "--lambda", lam, "--grid", "0.3,2,0.2,1.5,4,4", "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let text = std::fs::read_to_string(path).unwrap();
        cols.push(text.lines().skip(1).map(str::to_string).collect::<Vec<_>>());
    }
    let parse = |l: &str| {
        let f: Vec<&str> = l.split(',').collect();
        (f[4] == "ok").then(|| Complex64::new(f[2].parse().unwrap(), f[3].parse().unwrap()))
    };
    let jump = cols[0].iter().zip(&cols[1]).any(|(a, b)| match (parse(a), parse(b)) {
        (Some(a), Some(b)) => (a - b).norm() > 1e-6 * a.norm().max(b.norm()),
        _ => false,
    });
    assert!(jump);
}

#[test]
fn json_records_round_trip() {
    let o = run(&["eval", "--fn", "Aiq", "--q", "0.3,0.2", "--grid", "-1,1,-1,1,3,3"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let get = |k: &str| Complex64::new(v[k][0].as_f64().unwrap(), v[k][1].as_f64().unwrap());
        let base = Base::new(get("q")).unwrap();
        let again = eval_solution(SolutionId::Aiq, base, get("x"), None).unwrap();
        let rec = get("value");
        assert!((again - rec).norm() <= 1e-15 * rec.norm().max(1e-300));
    }
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# eval defaults\nq = 0.5\nfn = Aq\nx = 0\n").unwrap();
    let o = run(&["eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(value(stdout(&o).trim()), Complex64::new(1.0, 0.0));
    let o = run(&["eval", "--config", cfg.to_str().unwrap(), "--x", "0.5"]);
    assert_ne!(value(stdout(&o).trim()), Complex64::new(1.0, 0.0));

    std::fs::write(&cfg, "q = 0.5\ncolour = red\n").unwrap();
    let o = run(&["eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resum_and_audit() {
    let o = run(&["resum", "--q", "0.5", "--lambda", "0.9", "--x", "0.7,0.2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["function"], "resum_rf0");
    assert!(v["window"].as_u64().unwrap() >= 24);

    let o = run(&["audit", "--id", "two_f_zero", "--q", "0.5", "--lambda", "0.9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unique"], true);
}
