//! End-to-end tests of the `nlcs` binary: exit codes, CSV shape, environment
//! precedence and reproducible output.

use std::process::{Command, Output};

const ENV_VARS: &[&str] = &[
    "NLCS_L", "NLCS_COUNT", "NLCS_R", "NLCS_RATIO", "NLCS_RATIOS", "NLCS_KAPPA", "NLCS_PHI",
    "NLCS_N_MAX", "NLCS_TAIL_TOL", "NLCS_OUT",
];

fn nlcs(args: &[&str]) -> Output {
    nlcs_env(args, &[])
}

fn nlcs_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nlcs"));
    for v in ENV_VARS {
        cmd.env_remove(v);
    }
    cmd.args(args).envs(env.iter().copied());
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .collect()
}

fn meta_value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("# {key}=");
    text.lines().find_map(|l| l.strip_prefix(&prefix))
}

#[test]
fn zeros_prints_table() {
    let out = nlcs(&["zeros", "--l", "1", "--count", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(meta_value(&text, "l"), Some("1"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5);
    let first: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert!((first - 4.493409457909064).abs() < 1e-12);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "k,alpha,residual");
}

#[test]
fn negative_l_is_usage_error() {
    let out = nlcs(&["zeros", "--l", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nlcs(&["state", "--l", "-3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_grid_is_usage_error() {
    let out = nlcs(&["squeeze", "--r", "5:0.2:10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nlcs(&["squeeze", "--ratios", "0.5,-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncation_ceiling_is_convergence_error() {
    let out = nlcs(&["state", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn state_csv_is_normalized() {
    let out = nlcs(&["state", "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let trunc: usize = meta_value(&text, "trunc").unwrap().parse().unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), trunc + 1);
    let total: f64 = rows
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-12, "sum of probs {total}");
}

#[test]
fn undeformed_state_is_poissonian() {
    let out = nlcs(&["state", "--undeformed", "--reproducible"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mean = (0.5_f64 / 0.3).powi(2);
    for row in data_rows(&text).iter().take(10) {
        let mut cells = row.split(',');
        let n: usize = cells.next().unwrap().parse().unwrap();
        let p: f64 = cells.next().unwrap().parse().unwrap();
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let poisson = (-mean).exp() * mean.powi(n as i32) / fact;
        assert!((p - poisson).abs() < 1e-10, "n={n}: {p} vs {poisson}");
    }
}

#[test]
fn darkstate_reports_small_residual() {
    for extra in [&[][..], &["--undeformed"][..]] {
        let mut args = vec!["darkstate", "--reproducible"];
        args.extend_from_slice(extra);
        let out = nlcs(&args);
        assert_eq!(out.status.code(), Some(0), "{extra:?}");
        let text = stdout(&out);
        let row = *data_rows(&text).first().unwrap();
        let residual: f64 = row.split(',').next().unwrap().parse().unwrap();
        assert!(residual <= 1e-8, "{extra:?}: residual {residual}");
    }
}

#[test]
fn squeeze_rows_cover_both_ratios() {
    let out = nlcs(&["squeeze", "--reproducible", "--r", "0.2:5:10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "ratio,r_over_ab,s1,s2,var_x1,var_x2,g_expect,mandel_q,status");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.ends_with(",ok")));
    assert_eq!(rows.iter().filter(|r| r.starts_with("0.5,")).count(), 10);
    assert_eq!(rows.iter().filter(|r| r.starts_with("0.2,")).count(), 10);
}

#[test]
fn env_sets_defaults_and_cli_wins() {
    let from_env = nlcs_env(&["state", "--reproducible"], &[("NLCS_KAPPA", "0.25")]);
    assert_eq!(meta_value(&stdout(&from_env), "kappa"), Some("0.25"));
    let from_cli = nlcs_env(
        &["state", "--reproducible", "--kappa", "0.35"],
        &[("NLCS_KAPPA", "0.25")],
    );
    assert_eq!(meta_value(&stdout(&from_cli), "kappa"), Some("0.35"));
}

#[test]
fn reproducible_omits_timestamp_and_writes_files() {
    let timestamped = stdout(&nlcs(&["zeros", "--count", "2"]));
    assert!(timestamped.contains("# generated="));
    let dir = std::env::temp_dir().join(format!("nlcs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zeros.csv");
    let arg = path.to_str().unwrap();
    let out = nlcs(&["zeros", "--count", "2", "--reproducible", "--out", arg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(!written.contains("# generated="));
    assert!(written.contains("k,alpha,residual"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selfcheck_passes() {
    let out = nlcs(&["selfcheck"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("sections passed"));
    assert!(!text.contains("FAIL"));
}
