//! End-to-end tests of the binary: output contracts, exit codes, file
//! emission, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cauchy-annulus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cauchy-annulus"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn norm_disk_path_reports_two_over_j01() {
    let out = run(&["norm", "--r", "0", "--R", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("disk path"));
    // 2/j01 = 0.831661154631... printed at 12 significant digits
    assert!(text.contains("8.31661154631e-1"), "got:\n{text}");
}

#[test]
fn norm_scales_with_outer_radius() {
    let a = stdout(&run(&["norm", "--r", "0.5", "--R", "2"]));
    let b = stdout(&run(&["norm", "--r", "0.25", "--R", "1"]));
    let parse = |text: &str| -> f64 {
        text.lines()
            .find(|l| l.starts_with("norm"))
            .and_then(|l| l.split_whitespace().nth(2))
            .unwrap()
            .parse()
            .unwrap()
    };
    let (na, nb) = (parse(&a), parse(&b));
    assert!((na - 2.0 * nb).abs() <= 1e-10 * na.abs());
}

#[test]
fn invalid_geometry_is_usage_error() {
    let out = run(&["norm", "--r", "1", "--R", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["norm", "--radius", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mode_spectrum_peaks_at_zero_and_one() {
    let out = run(&["mode-spectrum", "--r", "0.4", "--max-m", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("e0") || l.contains("e-") || l.contains("e1"))
        .collect();
    assert_eq!(data_rows.len(), 3, "expected 3 rows for max-m = 1:\n{text}");
    let flagged: Vec<&str> = text.lines().filter(|l| l.contains("<- max")).collect();
    assert_eq!(flagged.len(), 2);
    assert!(flagged.iter().any(|l| l.trim_start().starts_with('0')));
    assert!(flagged.iter().any(|l| l.trim_start().starts_with('1')));
}

#[test]
fn mode_spectrum_rows_symmetric() {
    let out = run(&["mode-spectrum", "--r", "0.5", "--max-m", "4"]);
    let text = stdout(&out);
    let kappa_of = |m: &str| -> f64 {
        text.lines()
            .find(|l| l.split_whitespace().next() == Some(m))
            .and_then(|l| l.split_whitespace().nth(1))
            .unwrap()
            .parse()
            .unwrap()
    };
    // rows m and 1 - m are the same reduced problem
    assert_eq!(kappa_of("-3"), kappa_of("4"));
    assert_eq!(kappa_of("-1"), kappa_of("2"));
    assert_eq!(kappa_of("0"), kappa_of("1"));
}

#[test]
fn dirichlet_reports_k1() {
    let out = run(&["dirichlet", "--r", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6.24606183919e0"), "got:\n{text}");
}

#[test]
fn dirichlet_disk_path() {
    let out = run(&["dirichlet", "--r", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("disk path"));
    assert!(text.contains("2.40482555770e0"), "got:\n{text}");
}

#[test]
fn sweep_mode_norm_quantity() {
    let out = run(&[
        "sweep",
        "--quantity",
        "mode-norm:-3",
        "--r-min",
        "0.2",
        "--r-max",
        "0.7",
        "--steps",
        "4",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 5);
    // out-of-range mode is a usage error at parse time
    let bad = run(&["sweep", "--quantity", "mode-norm:70", "--steps", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn mode_spectrum_rejects_bad_max_m() {
    assert_eq!(run(&["mode-spectrum", "--r", "0.5", "--max-m", "0"]).status.code(), Some(2));
    assert_eq!(run(&["mode-spectrum", "--r", "0.5", "--max-m", "65"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_to_stdout_is_deterministic() {
    let args = [
        "sweep",
        "--quantity",
        "cauchy-norm",
        "--r-min",
        "0.1",
        "--r-max",
        "0.8",
        "--steps",
        "6",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next().unwrap(), "r,value,root");
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn sweep_svg_format() {
    let dir = std::env::temp_dir().join("cauchy_annulus_cli_test_svg");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.svg");
    let out = run(&[
        "sweep",
        "--quantity",
        "k1",
        "--steps",
        "8",
        "--format",
        "svg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<polyline"));
}

#[test]
fn figure_one_emits_svg_and_sibling_csv() {
    let dir = std::env::temp_dir().join("cauchy_annulus_cli_test_fig");
    std::fs::create_dir_all(&dir).unwrap();
    let svg_path = dir.join("f1.svg");
    let out = run(&["figure", "--which", "1", "--out", svg_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(svg_path.exists());
    let csv_path = dir.join("f1.csv");
    assert!(csv_path.exists());

    // left endpoint of the curve sits at the disk value ~ 0.8317
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let first_value: f64 = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((first_value - 0.8319f64).abs() < 1e-3);

    // strictly decreasing curve
    let values: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 200);
    for w in values.windows(2) {
        assert!(w[1] < w[0]);
    }
}

#[test]
fn figure_three_is_usage_error() {
    let out = run(&["figure", "--which", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_quick_passes_under_ten_seconds() {
    let started = std::time::Instant::now();
    let out = run(&["verify", "--level", "quick"]);
    let elapsed = started.elapsed();
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() >= 15);
    assert_eq!(text.lines().filter(|l| l.starts_with("[FAIL]")).count(), 0);
}

#[test]
fn verify_reports_convergence_order_near_two() {
    let out = run(&["verify", "--level", "quick"]);
    let text = stdout(&out);
    let line = text
        .lines()
        .find(|l| l.contains("sl_nd_convergence_order"))
        .expect("order check present");
    assert!(line.starts_with("[PASS]"), "{line}");
    assert!(line.contains("[1.8, 2.2]"));
}

#[test]
fn verify_with_corrupted_tolerances_fails_nonzero() {
    let out = run_env(
        &["verify", "--level", "quick"],
        "CAUCHY_ANNULUS_VERIFY_TOL_SCALE",
        "1e-9",
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
}

#[test]
fn root_tolerance_env_is_honored_and_validated() {
    let ok = run_env(&["norm", "--r", "0.5"], "CAUCHY_ANNULUS_ROOT_TOL", "1e-10");
    assert!(ok.status.success());
    let bad = run_env(&["norm", "--r", "0.5"], "CAUCHY_ANNULUS_ROOT_TOL", "banana");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn near_disk_warning_goes_to_stderr() {
    let out = run(&["norm", "--r", "1e-9", "--R", "1"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("disk limit"));
}

#[test]
fn help_mentions_tolerance_env() {
    let out = run(&["--help"]);
    assert!(stdout(&out).contains("CAUCHY_ANNULUS_ROOT_TOL"));
}

#[test]
fn output_paths_are_reported_not_overwritten_silently() {
    // sanity: write twice, both succeed (overwrite is allowed and logged)
    let dir = std::env::temp_dir().join("cauchy_annulus_cli_test_overwrite");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("x.csv");
    for _ in 0..2 {
        let out = run(&[
            "sweep",
            "--quantity",
            "kappa",
            "--steps",
            "4",
            "--r-min",
            "0.2",
            "--r-max",
            "0.7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert!(Path::new(&p).exists());
}
