//! End-to-end tests that drive the `rescurve` binary the way a user would:
//! spawn it, then inspect exit codes, streams, and output files.

use std::path::Path;
use std::process::{Command, Output};

fn rescurve(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rescurve"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    rescurve(args).output().expect("spawn rescurve")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(output),
        stderr(output)
    );
}

/// Parse one CSV column (by zero-based index) as floats, skipping the header.
fn csv_column(path: &Path, index: usize) -> Vec<f64> {
    let text = std::fs::read_to_string(path).expect("read CSV");
    text.lines()
        .skip(1)
        .map(|line| {
            line.split(',')
                .nth(index)
                .unwrap_or_else(|| panic!("row {line:?} has no column {index}"))
                .parse::<f64>()
                .unwrap_or_else(|e| panic!("bad number in {line:?}: {e}"))
        })
        .collect()
}

// ---------------------------------------------------------------- eigen --

#[test]
fn eigen_disk_reports_ten_digit_constants() {
    let output = run(&["eigen", "disk2d"]);
    assert_exit(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("lambda1 = 5.783185963"), "{text}");
    assert!(text.contains("lambda2 = 14.68197064"), "{text}");
    assert!(text.contains("nu1 = 2.404825558"), "{text}");
    assert!(text.contains("c0 = 1.08676163"), "{text}");
}

#[test]
fn eigen_ball3_prints_center_value() {
    let output = run(&["eigen", "ball", "3"]);
    assert_exit(&output, 0);
    // φ₁(0) = √(π/2) on the three-dimensional ball.
    assert!(stdout(&output).contains("phi1_center = 1.253314137"), "{}", stdout(&output));
}

#[test]
fn eigen_rect_uses_product_eigenvalue() {
    let output = run(&["eigen", "rect", "1", "2"]);
    assert_exit(&output, 0);
    // λ₁ = π²(1 + 1/4) = 5π²/4 on the (1, 2) rectangle.
    assert!(stdout(&output).contains("lambda1 = 12.33700550"), "{}", stdout(&output));
}

#[test]
fn eigen_writes_csv_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&["eigen", "disk2d", "--out", dir.path().to_str().unwrap()]);
    assert_exit(&output, 0);
    let text = std::fs::read_to_string(dir.path().join("eigen-disk2d.csv")).unwrap();
    assert!(text.starts_with("name,value\n"), "{text}");
    assert!(text.contains("lambda1,"), "{text}");
}

#[test]
fn eigen_rejects_unknown_domain() {
    assert_exit(&run(&["eigen", "torus"]), 2);
    assert_exit(&run(&["eigen", "ball", "x"]), 2);
}

// ---------------------------------------------------------------- curve --

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn curve_traces_catalog_problem_to_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "problem": "disk-usinu-xy",
            "xi_start": 0.0, "xi_end": 2.0, "dxi": 0.5,
            "resolution": {"polar": {"nr": 33, "ntheta": 32}},
            "plot": true
        }"#,
    );
    let output = run(&["curve", "--config", &config, "--out", dir.path().to_str().unwrap()]);
    assert_exit(&output, 0);

    let csv = std::fs::read_to_string(dir.path().join("disk-usinu-xy.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "xi,mu_computed,mu_asymptotic,newton_iters,pde_residual,projection_error,min_u,max_u"
    );
    assert_eq!(lines.count(), 5, "one row per grid point in [0, 2] at 0.5");
    // Line-feed terminators, no carriage returns.
    assert!(!csv.contains('\r'));

    let svg = std::fs::read_to_string(dir.path().join("disk-usinu-xy.svg")).unwrap();
    assert!(svg.starts_with("<svg"), "self-contained SVG");
    assert!(svg.contains("stroke-dasharray"), "asymptotic curve is dashed");
    assert!(svg.contains("computed") && svg.contains("asymptotic"), "legend present");
}

#[test]
fn curve_zero_problem_stays_flat() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "zero.json",
        r#"{
            "problem": "disk-zero-xy",
            "xi_start": -2.0, "xi_end": 2.0, "dxi": 1.0,
            "resolution": {"polar": {"nr": 33, "ntheta": 32}}
        }"#,
    );
    let output = run(&["curve", "--config", &config, "--out", dir.path().to_str().unwrap()]);
    assert_exit(&output, 0);
    let mu = csv_column(&dir.path().join("disk-zero-xy.csv"), 1);
    assert_eq!(mu.len(), 5);
    for m in mu {
        assert!(m.abs() <= 1e-6, "mu = {m:e} off the trivial branch");
    }
}

#[test]
fn curve_failure_writes_partial_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "starved.json",
        r#"{
            "problem": "disk-usinu-xy",
            "xi_start": 0.0, "xi_end": 2.0, "dxi": 1.0,
            "max_newton_iters": 1,
            "resolution": {"polar": {"nr": 33, "ntheta": 32}}
        }"#,
    );
    let output = run(&["curve", "--config", &config, "--out", dir.path().to_str().unwrap()]);
    assert_exit(&output, 1);
    // The message names the grid value that failed ...
    let err = stderr(&output);
    assert!(err.contains("stopped at") && err.contains("0"), "{err}");
    // ... and the partial CSV still exists (header only here).
    let csv = std::fs::read_to_string(dir.path().join("disk-usinu-xy.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1, "{csv}");
}

#[test]
fn curve_without_problem_is_usage_error() {
    assert_exit(&run(&["curve"]), 2);
}

#[test]
fn curve_rejects_unknown_problem_and_config_typos() {
    assert_exit(&run(&["curve", "no-such-problem"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "typo.json", r#"{"problemm": "disk-usinu-xy"}"#);
    let output = run(&["curve", "--config", &config]);
    assert_exit(&output, 2);
    assert!(stderr(&output).contains("problemm"), "{}", stderr(&output));
}

// ----------------------------------------------------------- asymptotic --

#[test]
fn asymptotic_rect_amplitude_is_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "asymptotic", "rect2d", "--dims", "1,2",
        "--xi-min", "0.5", "--xi-max", "30", "--points", "200",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_exit(&output, 0);
    let mu = csv_column(&dir.path().join("rect2d-asymptotic.csv"), 1);
    assert_eq!(mu.len(), 200);
    // Envelope 4√2/π ≈ 1.80063 bounds every sample.
    for m in mu {
        assert!(m.abs() <= 1.80064, "sample {m} above the envelope");
    }
}

#[test]
fn asymptotic_signed_log_filters_small_values() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "asymptotic", "projection",
        "--xi-min", "1", "--xi-max", "1e5", "--points", "120",
        "--signed-log", "--filter-small", "1",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_exit(&output, 0);
    let path = dir.path().join("projection-asymptotic.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("xi,mu,log_xi,signed_log_mu\n"), "{text}");
    let mu = csv_column(&path, 1);
    assert!(!mu.is_empty());
    for m in &mu {
        assert!(m.abs() >= 1.0, "row with |mu| = {} survived the filter", m.abs());
    }
    // The filter did drop something: the curve spends real ξ₁ stretches
    // inside (−1, 1), so fewer rows than grid points must remain.
    assert!(mu.len() < 120, "filter removed nothing");
}

#[test]
fn asymptotic_radial_n3_vanishes_where_the_cosine_does() {
    // Phase ξ√(π/2) − π/4 hits π/2 at ξ = (3π/4)/√(π/2): the model value
    // crosses zero there.
    let xi = (2.356194490192345_f64) / (std::f64::consts::PI / 2.0).sqrt();
    let dir = tempfile::tempdir().unwrap();
    let arg = format!("{xi:.17}");
    let output = run(&[
        "asymptotic", "radial-n3",
        "--xi-min", &arg, "--xi-max", &arg, "--points", "1",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_exit(&output, 0);
    let mu = csv_column(&dir.path().join("radial-n3-asymptotic.csv"), 1);
    assert_eq!(mu.len(), 1);
    assert!(mu[0].abs() < 1e-10, "mu = {:e} at the cosine zero", mu[0]);
}

#[test]
fn asymptotic_accepts_catalog_problem_ids() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "asymptotic", "ball2-sinu",
        "--xi-min", "5", "--xi-max", "50", "--points", "10",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_exit(&output, 0);
    assert!(dir.path().join("ball2-sinu-asymptotic.csv").exists());
}

#[test]
fn asymptotic_rejects_bad_requests() {
    assert_exit(&run(&["asymptotic", "warp-drive"]), 2);
    // Log grids need a positive start.
    assert_exit(
        &run(&["asymptotic", "projection", "--xi-min", "0", "--xi-max", "10", "--signed-log"]),
        2,
    );
    assert_exit(&run(&["asymptotic", "disk-power-sin", "--growth-p", "1.5"]), 2);
    assert_exit(&run(&["asymptotic", "rect2d", "--dims", "1,2,3"]), 2);
}

// ---------------------------------------------------------------- check --

#[test]
fn check_eigen_suite_passes() {
    let output = run(&["check", "eigen"]);
    assert_exit(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("suite eigen: pass"), "{text}");
    assert!(!text.contains(" fail"), "{text}");
}

#[test]
fn check_stationary_phase_suite_passes() {
    let output = run(&["check", "stationary-phase"]);
    assert_exit(&output, 0);
    let text = stdout(&output);
    assert!(text.contains("suite stationary-phase: pass"), "{text}");
    assert!(text.contains("mu=800"), "all four doublings reported: {text}");
}

#[test]
fn check_unknown_suite_is_usage_error() {
    assert_exit(&run(&["check", "vibes"]), 2);
}

// ------------------------------------------------------------- plumbing --

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_exit(&run(&["frobnicate"]), 2);
}

#[test]
fn thread_cap_env_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let output = rescurve(&[
        "asymptotic", "radial-n2",
        "--xi-min", "1", "--xi-max", "50", "--points", "64",
        "--out", dir.path().to_str().unwrap(),
    ])
    .env("RESCURVE_THREADS", "1")
    .output()
    .expect("spawn rescurve");
    assert_exit(&output, 0);
    assert_eq!(csv_column(&dir.path().join("radial-n2-asymptotic.csv"), 0).len(), 64);
}
