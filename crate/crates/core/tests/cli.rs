use std::process::{Command, Output};

use hardsoft::engine::{assemble_kernel_expansion, KernelExpansion};

fn hardsoft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardsoft")).args(args).env_remove("HARDSOFT_PRECISION_BITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn derive_json_round_trips() {
    let o = hardsoft(&["derive", "--order", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"config\""));
    let k = KernelExpansion::from_json(&text).unwrap();
    assert_eq!(k, assemble_kernel_expansion(1).unwrap());
}

#[test]
fn derive_latex_contains_the_first_correction() {
    let o = hardsoft(&["derive", "--order", "2", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("% config: "));
    assert!(text.contains(r"K_{1}(x,y) &= \frac{1}{10}\left(-3(x^2+xy+y^2)\mathrm{Ai}(x)\mathrm{Ai}(y)"));
    assert!(text.contains(r"K_{2}(x,y) &= \frac{1}{1400}"));
}

#[test]
fn derive_order_four_passes_all_checks() {
    assert_eq!(hardsoft(&["derive", "--order", "4"]).status.code(), Some(0));
}

#[test]
fn fredholm_rows() {
    let o = hardsoft(&["fredholm", "F", "--t", "0,8"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    let (f0, e0): (f64, f64) = (rows[0][4].parse().unwrap(), rows[0][8].parse().unwrap());
    assert!((f0 - 0.969372828355).abs() < 1e-10 && e0 <= 1e-9);
    let f8: f64 = rows[1][4].parse().unwrap();
    assert!((1.0 - f8).abs() < 1e-9);
    let o = hardsoft(&["fredholm", "e2", "--s", "1e-8", "--nu", "10"]);
    let e2: f64 = csv_rows(&stdout(&o))[0][4].parse().unwrap();
    assert!((e2 - 1.0).abs() < 1e-6);
}

#[test]
fn verify_subcommands_pass() {
    for args in [
        &["verify", "parametrix"][..],
        &["verify-parametrix", "--points", "2"],
        &["verify", "kernel", "--m", "2", "--nu", "50,100,200,400"],
        &["verify", "transition", "--t", "0", "--nu", "50,100,200,400"],
    ] {
        let o = hardsoft(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn kernel_table_has_the_expected_columns_and_slope() {
    let o = hardsoft(&["scan", "--m", "2"]);
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap() == "nu,h,m,max_residual,slope");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 12);
    let s: f64 = rows.iter().find(|r| r[2] == "2").unwrap()[4].parse().unwrap();
    assert!((s - 3.0).abs() < 0.15);
}

#[test]
fn identical_configuration_reproduces_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let mut outputs = vec![];
    for _ in 0..2 {
        let o = hardsoft(&["verify", "parametrix", "--points", "3", "--seed", "7", "--out", a.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        outputs.push(std::fs::read(&a).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(stdout(&hardsoft(&["fredholm", "F", "--t", "1"])), stdout(&hardsoft(&["fredholm", "F", "--t", "1"])));
    let rows = |seed: &str| csv_rows(&stdout(&hardsoft(&["verify", "parametrix", "--points", "3", "--seed", seed])));
    assert_eq!(rows("7"), rows("7"));
    assert_ne!(rows("7"), rows("8"));
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    assert_eq!(hardsoft(&["derive", "--order", "0"]).status.code(), Some(4));
    assert_eq!(hardsoft(&["scan", "--grid", "0:1"]).status.code(), Some(4));
    assert_eq!(hardsoft(&["fredholm", "F", "--t", "11"]).status.code(), Some(4));
    assert_eq!(hardsoft(&["derive", "--format", "csv"]).status.code(), Some(4));
    assert_eq!(hardsoft(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(hardsoft(&["verify", "kernel", "--precision-bits", "64"]).status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_hardsoft"))
        .args(["verify", "kernel"])
        .env("HARDSOFT_PRECISION_BITS", "64")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert_eq!(hardsoft(&["verify", "transition", "--t", "0", "--nu", "50,100"]).status.code(), Some(2));
}
