//! Behavior of the installed binary: output shapes, exit codes, and
//! reproducibility of file outputs.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nlspectral"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn nodes_csv_dumps_full_precision() {
    let out = run(&["nodes", "--kind", "lgl", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "j,node,weight");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,-1.0000000000000000e0,3.333333333333333"));
    assert!(lines[2].contains("1.3333333333333333e0"));
}

#[test]
fn nodes_json_has_meta_and_arrays() {
    let out = run(&["nodes", "--kind", "lg", "--n", "1", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"kind\":\"lg\""));
    assert!(text.contains("\"exact_degree\":3"));
    assert!(text.contains("\"nodes\":["));
    assert!(text.contains("5.7735026918962573e-1") || text.contains("5.7735026918962584e-1"));
}

#[test]
fn nodes_rejects_invalid_order() {
    let out = run(&["nodes", "--kind", "lgl", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_validates_arguments() {
    let out = run(&[
        "solve",
        "--problem",
        "example1",
        "--n",
        "1",
        "--delta",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--problem", "example1", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2), "missing --delta");
    let out = run(&[
        "solve",
        "--problem",
        "custom",
        "--config",
        "missing.toml",
        "--n",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--problem", "nope", "--n", "8", "--delta", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "solve",
        "--problem",
        "example1",
        "--n",
        "8",
        "--delta",
        "1.5",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "delta above 1 without the case-iv gate"
    );
    let out = run(&[
        "solve",
        "--problem",
        "example1",
        "--n",
        "8",
        "--delta",
        "0.1",
        "--m",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2), "M below N");
}

#[test]
fn solve_reports_error_against_exact() {
    let out = run(&[
        "solve",
        "--problem",
        "example1",
        "--n",
        "16",
        "--delta",
        "0.1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("max_error="));
    assert!(text.contains("residual_inf="));
    let err_line = text.lines().find(|l| l.starts_with("max_error=")).unwrap();
    let value: f64 = err_line.trim_start_matches("max_error=").parse().unwrap();
    assert!(value < 1e-8, "{value}");
}

#[test]
fn solve_writes_samples_nodal_and_system_dump() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.csv");
    let sys = dir.path().join("system.csv");
    let out = run(&[
        "solve",
        "--problem",
        "example1",
        "--n",
        "8",
        "--delta",
        "0.1",
        "--output",
        sol.to_str().unwrap(),
        "--dump-system",
        sys.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let samples = std::fs::read_to_string(&sol).unwrap();
    assert!(samples.starts_with("x,u_num,u_exact,abs_error\n"));
    assert_eq!(samples.lines().count(), 2002);
    let nodal = std::fs::read_to_string(dir.path().join("sol.nodal.csv")).unwrap();
    assert!(nodal.starts_with("k,x_k,u_k\n"));
    assert_eq!(nodal.lines().count(), 10);
    let a = std::fs::read_to_string(&sys).unwrap();
    assert_eq!(a.lines().count(), 9);
    assert_eq!(a.lines().next().unwrap().split(',').count(), 9);
    let b = std::fs::read_to_string(dir.path().join("system.rhs.csv")).unwrap();
    assert_eq!(b.lines().count(), 9);
}

#[test]
fn solve_file_outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.json");
    let path_b = dir.path().join("b.json");
    for path in [&path_a, &path_b] {
        let out = run(&[
            "solve",
            "--problem",
            "example1",
            "--n",
            "12",
            "--delta",
            "0.1",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(a, b);
}

#[test]
fn solve_custom_problem_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cubic.toml");
    // L_delta x^3 = 6x for the moment-2 constant kernel
    std::fs::write(
        &cfg,
        "delta = 0.1\nkernel = \"constant\"\nf = \"6*x\"\ng = \"x^3\"\nexact = \"x^3\"\n",
    )
    .unwrap();
    let out = run(&[
        "solve",
        "--problem",
        "custom",
        "--config",
        cfg.to_str().unwrap(),
        "--n",
        "6",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let err_line = text.lines().find(|l| l.starts_with("max_error=")).unwrap();
    let value: f64 = err_line.trim_start_matches("max_error=").parse().unwrap();
    assert!(value <= 1e-11, "{value}");
}

#[test]
fn sweep_n_emits_strictly_decaying_table() {
    let out = run(&[
        "sweep",
        "--mode",
        "n",
        "--problem",
        "example1",
        "--n-list",
        "4:32:4",
        "--delta",
        "0.1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,m,delta,max_error,argmax_x,residual_inf,wall_ms"
    );
    let errors: Vec<f64> = lines
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(errors.len(), 8);
    for w in errors.windows(2) {
        assert!(w[1] < w[0] || w[1] <= 1e-12, "{errors:?}");
    }
}

#[test]
fn sweep_delta_appends_slope_trailer() {
    let out = run(&[
        "sweep",
        "--mode",
        "delta",
        "--problem",
        "local-limit",
        "--n",
        "32",
        "--delta-list",
        "0.1,0.05",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let slope_line = text.lines().find(|l| l.starts_with("# slope,")).unwrap();
    let slope: f64 = slope_line.trim_start_matches("# slope,").parse().unwrap();
    assert!((1.7..=2.3).contains(&slope), "{slope}");
    assert!(text.lines().any(|l| l.starts_with("# floor_dominated,")));
}

#[test]
fn sweep_rejects_malformed_lists() {
    let out = run(&[
        "sweep",
        "--mode",
        "delta",
        "--problem",
        "local-limit",
        "--n",
        "32",
        "--delta-list",
        "",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sweep",
        "--mode",
        "delta",
        "--problem",
        "local-limit",
        "--n",
        "32",
        "--delta-list",
        "0.1,zebra",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sweep",
        "--mode",
        "n",
        "--problem",
        "example1",
        "--n-list",
        "8:4:2",
        "--delta",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sweep",
        "--mode",
        "n",
        "--problem",
        "example1",
        "--n-list",
        "4-32",
        "--delta",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "sweep",
        "--mode",
        "delta",
        "--problem",
        "local-limit",
        "--n",
        "32",
        "--delta-list",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2), "single delta has no slope");
}

#[test]
fn sweep_json_matches_documented_schema() {
    let out = run(&[
        "sweep",
        "--mode",
        "delta",
        "--problem",
        "local-limit",
        "--n",
        "32",
        "--delta-list",
        "0.1,0.05",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in [
        "\"meta\":",
        "\"records\":",
        "\"slope\":",
        "\"floor_dominated\":",
        "\"max_error\":",
        "\"wall_ms\":",
    ] {
        assert!(text.contains(key), "missing {key} in {text}");
    }
}

#[test]
fn jobs_env_fallback_is_validated() {
    let out = bin()
        .args([
            "sweep",
            "--mode",
            "n",
            "--problem",
            "example1",
            "--n-list",
            "4:8:4",
            "--delta",
            "0.1",
        ])
        .env("NLSPECTRAL_JOBS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args([
            "sweep",
            "--mode",
            "n",
            "--problem",
            "example1",
            "--n-list",
            "4:8:4",
            "--delta",
            "0.1",
        ])
        .env("NLSPECTRAL_JOBS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn check_reports_at_least_twelve_checks_and_passes() {
    let out = run(&["check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let reported = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("SKIP") || l.starts_with("FAIL"))
        .count();
    assert!(reported >= 12, "only {reported} checks reported");
    assert!(!text.lines().any(|l| l.starts_with("FAIL")), "{text}");
    assert!(text
        .lines()
        .any(|l| l.starts_with("SKIP barrier-moment-mismatch-skip")));
}

#[test]
fn solve_case_iv_gate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("wide.toml");
    std::fs::write(
        &cfg,
        "delta = 1.5\nkernel = \"constant\"\nf = \"6*x\"\ng = \"x^3\"\nexact = \"x^3\"\n",
    )
    .unwrap();
    let without = run(&[
        "solve",
        "--problem",
        "custom",
        "--config",
        cfg.to_str().unwrap(),
        "--n",
        "8",
    ]);
    assert_eq!(without.status.code(), Some(2));
    let with = run(&[
        "solve",
        "--problem",
        "custom",
        "--config",
        cfg.to_str().unwrap(),
        "--n",
        "8",
        "--allow-case-iv",
    ]);
    assert!(
        with.status.success(),
        "{}",
        String::from_utf8_lossy(&with.stderr)
    );
    let text = stdout(&with);
    let err_line = text.lines().find(|l| l.starts_with("max_error=")).unwrap();
    let value: f64 = err_line.trim_start_matches("max_error=").parse().unwrap();
    assert!(value <= 1e-10, "{value}");
}
