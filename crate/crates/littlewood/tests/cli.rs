use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use littlewood::formats::{instance_to_string, parse_instance, read_instance};
use littlewood_core::{Instance, NormSpec, RVector, Rational};
use tempfile::tempdir;

fn littlewood(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_littlewood")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bound_prints_exact_and_decimal() {
    let out = littlewood(&["bound", "4", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n = 4\nk = 1\ndelta = 1\nbound = 1/4\ndecimal = 0.250000000000\n");

    let out = littlewood(&["bound", "3", "4"]);
    assert!(stdout(&out).contains("bound = 0\n"));
}

#[test]
fn extremal_then_verify_is_tight() {
    let dir = tempdir().unwrap();
    let inst = dir.path().join("ext.toml");
    let report = dir.path().join("report.toml");
    let out = littlewood(&["extremal", "5", "l2", "3/2", "--out", path_str(&inst)]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    let out = littlewood(&["atom", path_str(&inst)]);
    assert_eq!(stdout(&out).trim(), "5/32");

    let out = littlewood(&["verify", path_str(&inst), "--out", path_str(&report)]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("chain_holds = true"), "{text}");
    assert!(text.contains("tight = true"), "{text}");
}

#[test]
fn verify_lp_instance_uses_float_mode() {
    let dir = tempdir().unwrap();
    let inst = dir.path().join("lp.toml");
    fs::write(
        &inst,
        "schema = \"littlewood-instance/1\"\ndimension = 2\nnorm = \"lp:3\"\n\
         vectors = [[\"1/2\", \"1/2\"], [\"1\", \"0\"]]\ntarget = [\"3/2\", \"1/2\"]\n",
    )
    .unwrap();
    let out = littlewood(&["verify", path_str(&inst)]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).contains("mode = \"float\""));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "schema = \"littlewood-instance/1\"\ndimension = 2\nnorm = \"l2\"\nvectors = [[\"1\", \"x\"]]\ntarget = [\"0\", \"0\"]\n").unwrap();
    assert_eq!(littlewood(&["atom", path_str(&bad)]).status.code(), Some(2));

    let outside = dir.path().join("outside.toml");
    fs::write(&outside, "schema = \"littlewood-instance/1\"\ndimension = 1\nnorm = \"l1\"\nvectors = [[\"3/2\"]]\ntarget = [\"0\"]\n").unwrap();
    let out = littlewood(&["verify", path_str(&outside)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    assert_eq!(littlewood(&["atom", path_str(&dir.path().join("missing.toml"))]).status.code(), Some(2));
    assert_eq!(littlewood(&["extremal", "3", "l7", "1"]).status.code(), Some(2));
}

#[test]
fn campaign_exit_codes() {
    let dir = tempdir().unwrap();
    let config = dir.path().join("grid.toml");
    let report = dir.path().join("out").join("report.toml");
    fs::create_dir_all(report.parent().unwrap()).unwrap();
    fs::write(
        &config,
        "schema = \"littlewood-campaign/1\"\nmode = \"exhaustive-grid\"\nn_min = 1\nn_max = 3\n\
         norms = [\"l1\", \"linf\"]\ngrid = [\"-1\", \"1/2\"]\n",
    )
    .unwrap();
    let out = littlewood(&["campaign", path_str(&config), "--workers", "2", "--out", path_str(&report)]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = fs::read_to_string(&report).unwrap();
    assert!(text.contains("status = \"verified\""), "{text}");
    assert!(!dir.path().join("out").join("violations").exists());

    let big = dir.path().join("big.toml");
    fs::write(
        &big,
        "schema = \"littlewood-campaign/1\"\nmode = \"random\"\nn_min = 1\nn_max = 60\n\
         norms = [\"l2\"]\nbudget = 10\n",
    )
    .unwrap();
    assert_eq!(littlewood(&["campaign", path_str(&big)]).status.code(), Some(3));
}

#[test]
fn instance_file_round_trip() {
    let norm: NormSpec = "poly:[1,0;0,1;2/3,2/3]".parse().unwrap();
    let vectors = vec![
        RVector::new(vec![Rational::ratio(1, 2), Rational::ratio(-1, 3)]).unwrap(),
        RVector::from_ints(&[0, 1]),
    ];
    let inst = Instance::new(vectors, RVector::new(vec![Rational::ratio(-7, 6), Rational::zero()]).unwrap(), norm)
        .unwrap();
    let text = instance_to_string(&inst).unwrap();
    assert!(text.starts_with('#'));
    let back = parse_instance(&text).unwrap();
    assert_eq!(back.vectors(), inst.vectors());
    assert_eq!(back.target(), inst.target());
    assert_eq!(back.norm(), inst.norm());

    let dir = tempdir().unwrap();
    let path = dir.path().join("i.toml");
    fs::write(&path, &text).unwrap();
    assert_eq!(read_instance(&path).unwrap().target(), inst.target());
}

#[test]
fn instance_file_rejects_bad_fields() {
    let base = "schema = \"littlewood-instance/1\"\ndimension = 2\nnorm = \"l2\"\nvectors = [[\"1/2\", \"0\"]]\ntarget = [\"0\", \"0\"]\n";
    assert!(parse_instance(base).is_ok());
    assert!(parse_instance(&base.replace("instance/1", "instance/2")).is_err());
    assert!(parse_instance(&base.replace("dimension = 2", "dimension = 3")).is_err());
    assert!(parse_instance(&format!("{base}extra = 1\n")).is_err());
    assert!(parse_instance(&base.replace("\"1/2\"", "\"0.5\"")).is_err());
    assert!(parse_instance(&base.replace("[\"1/2\", \"0\"]", "[\"0\", \"0\"]")).is_err());
}

#[test]
fn empty_budget_is_verified() {
    let dir = tempdir().unwrap();
    let config = dir.path().join("empty.toml");
    fs::write(
        &config,
        "schema = \"littlewood-campaign/1\"\nmode = \"random\"\nn_min = 1\nn_max = 4\nnorms = [\"l2\"]\nbudget = 0\n",
    )
    .unwrap();
    let out = littlewood(&["campaign", path_str(&config)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("instances = 0\n") && text.contains("status = \"verified\""), "{text}");
}
