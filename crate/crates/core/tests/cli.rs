use std::process::{Command, Output};

use serde_json::Value;
use unicrit::cli::emit::schema_check;
use unicrit::cli::reports::{tail_ratios, trend, verdict};

fn unicrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unicrit")).args(args).output().expect("spawn unicrit")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Small settings so every subcommand finishes quickly.
const SMALL: &[&str] = &[
    "--set", "n_series=6",
    "--set", "n_orbit=256",
    "--set", "n_profile=256",
    "--set", "n_tree=3",
    "--set", "tree_depth=6",
    "--set", "exponent_depth=6",
    "--set", "delta_count=8",
    "--set", "delta_min=1e-4",
    "--set", "decay_depth=5",
    "--set", "sample=4",
    "--set", "t_grid=0.5,1,2",
    "--set", "tol=1e-6",
];

const SUBCOMMANDS: [&str; 12] = [
    "orbit",
    "preimages",
    "poincare",
    "forward",
    "exponent",
    "rprofile",
    "children",
    "returns",
    "theoremb",
    "lb2bc",
    "decay",
    "regen-feigenbaum",
];

fn with_small<'a>(head: &[&'a str]) -> Vec<&'a str> {
    let mut args = head.to_vec();
    args.extend_from_slice(SMALL);
    args
}

#[test]
fn every_subcommand_emits_schema_valid_json() {
    for sub in SUBCOMMANDS {
        let out = unicrit(&with_small(&[sub, "--format", "json"]));
        let text = stdout(&out);
        let value = schema_check(&text).unwrap_or_else(|e| panic!("{sub}: {e}"));
        assert_eq!(value["kind"], sub);
    }
}

#[test]
fn csv_has_exactly_one_header() {
    for sub in ["orbit", "poincare", "theoremb", "rprofile"] {
        let text = stdout(&unicrit(&with_small(&[sub])));
        let mut lines = text.lines();
        let header = lines.next().unwrap().to_string();
        assert!(!header.is_empty());
        assert!(lines.all(|l| l != header), "{sub}: repeated header");
        let width = header.split(',').count();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        for record in reader.records() {
            assert_eq!(record.unwrap().len(), width);
        }
    }
}

#[test]
fn theoremb_verdicts_recompute_from_json() {
    let text = stdout(&unicrit(&with_small(&["theoremb", "--set", "preset=feigenbaum", "--format", "json"])));
    let value: Value = serde_json::from_str(&text).unwrap();
    let rows = value["data"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let numbers = |v: &Value| -> Vec<f64> { v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect() };
    for row in rows {
        let level = trend(&tail_ratios(&numbers(&row["level_sums"])));
        let forward = trend(&tail_ratios(&numbers(&row["forward_terms"])));
        assert_eq!(row["verdict"].as_str().unwrap(), verdict(level, forward).as_str());
    }
}

#[test]
fn exit_codes_follow_error_classes() {
    assert_eq!(unicrit(&["orbit", "--set", "no_such_key=1"]).status.code(), Some(2));
    assert_eq!(unicrit(&["orbit", "--set", "preset=mandelbrot"]).status.code(), Some(2));
    assert_eq!(unicrit(&["orbit", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(unicrit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(unicrit(&["decay", "--set", "node_budget=8"]).status.code(), Some(3));
    let collision = unicrit(&with_small(&["theoremb", "--set", "preset=basilica"]));
    assert_eq!(collision.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&collision.stderr).contains("error"));
    assert_eq!(unicrit(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_writes_the_rendered_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.json");
    let path_str = path.to_str().unwrap();
    let direct = stdout(&unicrit(&with_small(&["orbit", "--format", "json"])));
    let out = unicrit(&with_small(&["orbit", "--format", "json", "--out", path_str]));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);

    let missing = dir.path().join("missing").join("orbit.csv");
    let failed = unicrit(&["orbit", "--out", missing.to_str().unwrap()]);
    assert_eq!(failed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&failed.stderr).contains(missing.to_str().unwrap()));
}

#[test]
fn config_file_is_read_and_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# forward series\npreset = feigenbaum\nn_series = 5\n").unwrap();
    let p = path.to_str().unwrap();
    let text = stdout(&unicrit(&["forward", "--config", p, "--set", "n_series=3", "--format", "json"]));
    let value: Value = serde_json::from_str(&text).unwrap();
    let map = &value["data"]["map"]["parameter"];
    assert!((map[0].as_f64().unwrap() + 1.4011551890920506).abs() < 1e-12);
    assert_eq!(unicrit(&["forward", "--config", "/nonexistent/run.cfg"]).status.code(), Some(1));
}

#[test]
fn svg_and_ascii_render() {
    let svg = stdout(&unicrit(&with_small(&["poincare", "--format", "svg"])));
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    let ascii = stdout(&unicrit(&with_small(&["forward", "--format", "ascii"])));
    assert!(ascii.lines().count() >= 18);
}
