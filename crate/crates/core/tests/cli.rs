// Copyright 2026 spinfridge contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line contract: exit codes, machine-readable errors, preset
//! listing, CSV output, and byte-level reproducibility of the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinfridge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn presets_lists_every_canonical_name() {
    let out = run(&["presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7"] {
        assert!(text.contains(name), "missing preset {name} in listing");
    }
}

#[test]
fn preset_dump_is_valid_toml_and_runnable() {
    let out = run(&["presets", "--dump", "fig4"]);
    assert!(out.status.success());
    let toml_text = String::from_utf8(out.stdout).unwrap();
    assert!(toml_text.contains("kind = \"sweep\""));

    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("fig4.toml");
    std::fs::write(&cfg_path, &toml_text).unwrap();
    let out_path = dir.path().join("fig4.csv");
    let out = run(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (cols, rows) = spinfridge::experiments::read_csv(std::fs::File::open(&out_path).unwrap())
        .unwrap();
    assert_eq!(cols, vec!["g", "Qdot_1", "T1_s"]);
    assert_eq!(rows.len(), 15);
}

#[test]
fn unknown_config_key_fails_with_machine_readable_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("typo.toml");
    // "jxx" is not a key; the run must fail loudly.
    std::fs::write(
        &cfg_path,
        r#"
kind = "sweep"
mode = "local"
seed = 1

[chain]
fields = [1.1, 1.3]

[chain.couplings]
jxx = 0.02

[baths]
temperatures = [1.0, 1.1]
rates = [0.05, 0.05]

[sweep]
parameter = "j_xy"
values = [0.01]
"#,
    )
    .unwrap();
    let out = run(&["sweep", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    let line = err.lines().last().unwrap();
    let parsed: serde_json::Value = serde_json::from_str(line).expect("JSON error line");
    assert_eq!(parsed["error"]["kind"], "ConfigError");
}

#[test]
fn unknown_preset_fails() {
    let out = run(&["run", "--preset", "fig99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subcommand_kind_mismatch_fails() {
    let out = run(&["scatter", "--preset", "fig4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mode_override_is_validated() {
    let out = run(&["sweep", "--preset", "fig4", "--mode", "global"]);
    // fig4 carries no alphas, so forcing global mode must fail cleanly.
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdout_csv_when_no_output_path() {
    let out = run(&["sweep", "--preset", "fig4_jz"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# spinfridge"));
    assert!(text.lines().nth(1).unwrap().starts_with("g,"));
}

#[test]
fn binary_output_is_reproducible_across_worker_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| -> PathBuf { dir.path().join(n) };
    let a = path("a.csv");
    let b = path("b.csv");
    assert!(run(&["sweep", "--preset", "fig4", "--workers", "1", "--out", a.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["sweep", "--preset", "fig4", "--workers", "3", "--out", b.to_str().unwrap()])
        .status
        .success());
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    assert!(!bytes_a.is_empty());
}

#[test]
fn seed_override_changes_the_metadata_line() {
    let out1 = run(&["sweep", "--preset", "fig4_jz", "--seed", "5"]);
    let out2 = run(&["sweep", "--preset", "fig4_jz", "--seed", "6"]);
    let head1 = String::from_utf8(out1.stdout).unwrap().lines().next().unwrap().to_string();
    let head2 = String::from_utf8(out2.stdout).unwrap().lines().next().unwrap().to_string();
    assert!(head1.contains("seed=5"));
    assert!(head2.contains("seed=6"));
    assert_ne!(head1, head2);
}

#[test]
fn workers_env_variable_is_honored() {
    // The env var must not change the results or the metadata.
    let plain = run(&["sweep", "--preset", "fig4_jz"]);
    let with_env = bin()
        .args(["sweep", "--preset", "fig4_jz"])
        .env("SPINFRIDGE_WORKERS", "2")
        .output()
        .unwrap();
    assert!(with_env.status.success());
    assert_eq!(plain.stdout, with_env.stdout);
}
