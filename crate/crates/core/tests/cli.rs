//! End-to-end checks of the `catk` binary: exit codes, output routing,
//! and the validate/run/uar surfaces.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn catk(args: &[&std::ffi::OsStr]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catk")).args(args).output().unwrap()
}

fn run_on(config: &Path, subcommand: &str, extra: &[&str]) -> Output {
    let mut args: Vec<&std::ffi::OsStr> =
        vec![subcommand.as_ref(), "--config".as_ref(), config.as_os_str()];
    for e in extra {
        args.push(e.as_ref());
    }
    catk(&args)
}

const DECAY_KM: &str = r#"seed = 42
probes = [1.0]

[space]
kind = "euclidean"
dim = 1

[order]
kind = "coordinatewise_cone"

[semigroup]
flow = "diagonal_flow"
rates = [1.0]
attractor = [0.0]

[semigroup.domain]
kind = "ball"
center = [-0.5]
radius = 0.5

[scheme]
kind = "km"
x0 = [-1.0]
lambda = 0.5
t0 = 1.0
stop_tol = 1e-6
max_iters = 100
"#;

const EXPANSIVE_KM: &str = r#"seed = 5
probes = [1.0]

[space]
kind = "euclidean"
dim = 2

[order]
kind = "coordinatewise_cone"

[semigroup]
flow = "expansive_flow"

[scheme]
kind = "km"
x0 = [0.0, 0.0]
t0 = 1.0
lambda = 0.5
stop_tol = 1e-6
max_iters = 5
"#;

#[test]
fn malformed_toml_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.toml", "seed = [not toml");
    let out = run_on(&config, "validate", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn unknown_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let body = DECAY_KM.replace("seed = 42", "seed = 42\nbogus = 1");
    let config = write_config(dir.path(), "unknown.toml", &body);
    let out = run_on(&config, "run", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn inconsistent_space_and_order_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let body = DECAY_KM
        .replace("kind = \"euclidean\"\ndim = 1", "kind = \"sphere\"\ndim = 2\nkappa = 1.0")
        .replace("rates = [1.0]", "rates = [1.0, 1.0]");
    let config = write_config(dir.path(), "sphere_cone.toml", &body);
    let out = run_on(&config, "validate", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("euclidean"));
}

#[test]
fn missing_config_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("absent.toml");
    let out = run_on(&config, "validate", &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_passes_on_decay_flow() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "decay.toml", DECAY_KM);
    let out = run_on(&config, "validate", &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: PASS"), "{text}");
    assert!(text.contains("S5 nonexpansive on comparable pairs: PASS"), "{text}");
}

#[test]
fn validate_fails_with_witness_on_expansive_flow() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "expansive.toml", EXPANSIVE_KM);
    let out = run_on(&config, "validate", &[]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: FAIL"), "{text}");
    assert!(text.contains("S5 nonexpansive on comparable pairs: FAIL"), "{text}");
    assert!(text.contains("first witness:"), "{text}");
}

#[test]
fn run_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "decay.toml", DECAY_KM);
    let out_path = dir.path().join("trace.csv");
    let out = run_on(&config, "run", &["--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status: converged"), "{text}");
    assert!(text.contains("final residual at t=1:"), "{text}");
    assert!(text.contains("trace written to"), "{text}");

    let csv = std::fs::read_to_string(&out_path).unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(header, "k,t_k,lambda,coord_0,step_dist,monotone_ok,inner_iters,res_1");
    assert!(csv.lines().count() >= 3);
}

#[test]
fn run_without_out_streams_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let body = DECAY_KM.replace("max_iters = 100", "max_iters = 30");
    let config = write_config(dir.path(), "decay.toml", &body);
    let out = run_on(&config, "run", &[]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("k,t_k,lambda,"), "{stdout}");
    // The summary moves to stderr so the CSV stream stays clean.
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("status: converged"), "{stderr}");
}

#[test]
fn run_honors_the_config_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("from_config.csv");
    let body = format!("out = \"{}\"\n{DECAY_KM}", out_path.display());
    let config = write_config(dir.path(), "decay.toml", &body);
    let out = run_on(&config, "run", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out_path.exists());
}

#[test]
fn run_gates_on_validation_unless_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "expansive.toml", EXPANSIVE_KM);

    let gated = run_on(&config, "run", &[]);
    assert_eq!(gated.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&gated.stdout).contains("status: FAIL"));

    // The seed is a fixed point of the dilation, so the run itself
    // converges immediately once the gate is bypassed.
    let skipped = run_on(&config, "run", &["--skip-validate"]);
    assert_eq!(skipped.status.code(), Some(0));
    let stderr = String::from_utf8(skipped.stderr).unwrap();
    assert!(stderr.contains("status: converged"), "{stderr}");
}

#[test]
fn seed_override_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "decay.toml", DECAY_KM);
    let a = run_on(&config, "validate", &["--seed", "7"]);
    let b = run_on(&config, "validate", &["--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn uar_reports_the_regularity_flag() {
    let dir = tempfile::tempdir().unwrap();
    // The scheme section stays in place; the uar command ignores it. The
    // grid runs to t = 6 so the final sup sits far below the decision
    // threshold of the regularity flag.
    let body =
        format!("{DECAY_KM}\n[uar]\nh = 1.0\nt_grid = [0.0, 1.0, 2.0, 4.0, 6.0]\nn_points = 100\n");
    let config = write_config(dir.path(), "uar.toml", &body);
    let out_path = dir.path().join("profile.csv");
    let out = run_on(&config, "uar", &["--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("uniformly_asymptotically_regular: true"), "{text}");

    let csv = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "t,sup_residual");
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn uar_without_section_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "decay.toml", DECAY_KM);
    let out = run_on(&config, "uar", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[uar]"));
}

#[test]
fn run_without_scheme_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let body: String = DECAY_KM
        .lines()
        .take_while(|l| *l != "[scheme]")
        .map(|l| format!("{l}\n"))
        .collect();
    let config = write_config(dir.path(), "no_scheme.toml", &body);
    let out = run_on(&config, "run", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[scheme]"));
}
