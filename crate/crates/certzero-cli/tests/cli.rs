use std::process::{Command, Output};

fn certzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certzero"))
        .args(args)
        .env_remove("CERTZERO_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Splits CSV output into blocks separated by blank lines, each a list of rows.
fn blocks(text: &str) -> Vec<Vec<Vec<String>>> {
    text.split("\n\n")
        .map(|b| b.lines().map(|l| l.split(',').map(str::to_string).collect()).collect())
        .collect()
}

fn column(block: &[Vec<String>], name: &str) -> Vec<String> {
    let i = block[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    block[1..].iter().map(|r| r[i].clone()).collect()
}

#[test]
fn zeros_table_has_positive_widths() {
    let o = certzero(&["zeros", "--nu", "1", "--m", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let b = &blocks(&stdout(&o))[0];
    assert_eq!(b[0], ["nu", "m", "j_point", "j_lower", "j_upper", "width"]);
    let widths = column(b, "width");
    assert_eq!(widths.len(), 3);
    assert!(widths.iter().all(|w| w.parse::<f64>().unwrap() > 0.0));
}

#[test]
fn zeros_check_adds_oracle_columns() {
    let o = certzero(&["zeros", "--nu", "1", "--m", "1", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let b = &blocks(&stdout(&o))[0];
    assert_eq!(column(b, "inside"), ["true"]);
    let oracle: f64 = column(b, "oracle")[0].parse().unwrap();
    assert!((oracle - 3.831705970207512).abs() < 1e-14);
}

#[test]
fn hypothesis_violation_exits_2_and_names_field() {
    let o = certzero(&["zeros", "--nu", "0.5", "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("--nu") && e.contains("hypothesis"), "{e}");
}

#[test]
fn malformed_range_exits_2() {
    let o = certzero(&["zeros", "--nu", "1", "--m", "3..1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--m"));
    assert_eq!(certzero(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn p1_is_unsupported() {
    let o = certzero(&["scan", "p1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("unsupported: requires unpublished q-coefficients"));
}

#[test]
fn p7_summary_landmark() {
    let o = certzero(&["scan", "p7"]);
    assert_eq!(o.status.code(), Some(0));
    let b = blocks(&stdout(&o));
    assert_eq!(b[0][0], ["v", "value"]);
    assert_eq!(b[0].len(), 10_001);
    let max: f64 = column(&b[1], "max")[0].parse().unwrap();
    let argmax: f64 = column(&b[1], "argmax")[0].parse().unwrap();
    assert!((max - 0.99615).abs() < 1e-4);
    assert!((argmax - 0.05288).abs() < 1e-4);
}

#[test]
fn cal_g2_column_decreases() {
    let o = certzero(&["scan", "calG2", "--samples", "20000"]);
    assert_eq!(o.status.code(), Some(0));
    let b = blocks(&stdout(&o));
    let values: Vec<f64> = column(&b[0], "value").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(values.len(), 20_000);
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(column(&b[1], "decreasing"), ["true"]);
}

#[test]
fn constants_pass() {
    let o = certzero(&["constants", "psi0", "kappa2", "c1"]);
    assert_eq!(o.status.code(), Some(0));
    let b = &blocks(&stdout(&o))[0];
    assert_eq!(b[0], ["name", "computed", "paper", "abs_diff", "tolerance", "pass"]);
    assert_eq!(column(b, "name"), ["psi0", "kappa2", "c1"]);
    assert_eq!(column(b, "pass"), ["true", "true", "true"]);
    assert_eq!(certzero(&["constants", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_extended_at_nu_20() {
    let o = certzero(&["verify", "--nu", "20", "--m", "1..10", "--policy", "extended"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let b = blocks(&stdout(&o));
    assert!(column(&b[0], "pass").iter().all(|p| p == "true"));
    for (lo, (x, hi)) in column(&b[0], "window_lower")
        .iter()
        .zip(column(&b[0], "normalized_error").iter().zip(column(&b[0], "window_upper")))
    {
        let (lo, x, hi): (f64, f64, f64) = (lo.parse().unwrap(), x.parse().unwrap(), hi.parse().unwrap());
        assert!(lo <= x && x <= hi);
    }
    assert_eq!(column(&b[1], "failed"), ["0"]);
}

#[test]
fn verify_failure_exits_4() {
    // a standard-precision bracket is wider than the enclosure at large order
    let o = certzero(&["verify", "--nu", "20", "--m", "1", "--policy", "standard"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let args = ["zeros", "--nu", "1,2.5", "--m", "1..6", "--check"];
    let a = certzero(&[&["--jobs", "1"], &args[..]].concat());
    let b = certzero(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(!text.contains('\r'));
    let ms = column(&blocks(&text)[0], "m");
    assert_eq!(ms, ["1", "2", "3", "4", "5", "6", "1", "2", "3", "4", "5", "6"]);
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_certzero"))
        .args(["zeros", "--nu", "1", "--m", "1"])
        .env("CERTZERO_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_certzero"))
        .args(["zeros", "--nu", "1", "--m", "1"])
        .env("CERTZERO_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("certzero-cli-{}.csv", std::process::id()));
    let o = certzero(&["oracle", "--nu", "1", "--x", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let j: f64 = column(&blocks(&text)[0], "j")[0].parse().unwrap();
    assert!((j - 0.04347274616886144).abs() < 1e-15);
}

#[test]
fn oracle_lists_zeros() {
    let o = certzero(&["oracle", "--nu", "1", "--m", "1..2"]);
    assert_eq!(o.status.code(), Some(0));
    let b = &blocks(&stdout(&o))[0];
    let roots: Vec<f64> = column(b, "root").iter().map(|s| s.parse().unwrap()).collect();
    assert!((roots[0] - 3.831705970207512).abs() < 1e-14);
    assert!((roots[1] - 7.015586669815619).abs() < 1e-14);
}
