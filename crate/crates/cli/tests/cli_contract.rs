//! The binary as a subprocess: exit codes, output shape, determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sepsearch"));
    cmd.args(args).env_remove("SEPSEARCH_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn sepsearch")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["table", "--n", "10", "--grover-only"]).status.code(), Some(0));
    assert_eq!(run(&["table", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["teleport"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--n", "4", "--omega", "0"]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "--n", "4", "--omega", "2pi/"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--n", "30", "--omega", "pi/2", "--engine", "full"]).status.code(), Some(1));
    assert_eq!(run(&["cost", "--n", "10", "--omega", "pi", "--t-oracle=-1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // one failing cell: rows still written, exit 1
    let o = run(&["table", "--n", "0,10", "--omega", "pi/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn machine_readable_errors() {
    let o = run(&["simulate", "--n", "4", "--omega", "0", "--json-errors"]);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "domain");
    let o = run(&["simulate", "--n", "4", "--omega", "pi/x", "--json-errors"]);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!((err["error"]["kind"].as_str(), err["error"]["position"].as_u64()), (Some("parse"), Some(3)));
    let o = run(&["table", "--bogus", "--json-errors"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "usage");
}

#[test]
fn table_shapes() {
    let o = run(&["table", "--n", "10", "--omega", "pi/2"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,omega_label,algorithm,iterations,success_probability,error_rate,error");
    assert_eq!(lines.len(), 2);
    let f: Vec<&str> = lines[1].split(',').collect();
    assert_eq!((f[0], f[1], f[3]), ("10", "pi/2", "36"));
    assert_eq!(format!("{:.1e}", f[5].parse::<f64>().unwrap()), "2.2e-1");

    let o = run(&["table", "--grover-only"]);
    assert_eq!(stdout(&o).lines().skip(1).filter(|l| l.contains(",grover,")).count(), 4);
    assert_eq!(stdout(&o).lines().count(), 5);

    let o = run(&["table", "--n", "10", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["command"], "table");
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert!(v["version"].is_string() && v["params"].is_object());
    assert!(!text.contains('\r'));
}

#[test]
fn paper_format_matches_transcription_up_to_30() {
    let o = run(&["table", "--n", "10,20,30", "--paper-format"]);
    let want: Vec<String> = golden("table1_transcription.csv")
        .lines()
        .filter(|l| !l.starts_with("40,"))
        .map(String::from)
        .collect();
    let got: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(got, want);
}

#[test]
fn reruns_are_byte_identical_and_match_golden() {
    let args = ["table", "--n", "10,20"];
    let a = run(&args);
    let b = run_env(&args, &[("SEPSEARCH_THREADS", "1")]);
    let c = run_env(&args, &[("SEPSEARCH_THREADS", "3")]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a), golden("table_machine_n10_20.csv"));
    for args in [
        &["spectrum", "--n", "12", "--omega", "2pi/3", "--secular"][..],
        &["phi", "--n", "16", "--samples", "33"],
        &["lemma", "--n", "16,256"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn output_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"n": [10, 20], "omega": ["2pi/3"], "paper-format": true}"#).unwrap();
    let o = run(&["table", "--config", cfg.to_str().unwrap(), "--n", "10", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "n,omega_label,algorithm,iterations,success_probability,error_rate,error\n10,2pi/3,separable,29,,2.5e-1,\n");
    std::fs::write(&cfg, r#"{"warp": 9}"#).unwrap();
    assert_eq!(run(&["table", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["table", "--config", "/nonexistent.json"]).status.code(), Some(2));
}

fn phi_column(n: &str) -> Vec<(f64, f64)> {
    stdout(&run(&["phi", "--n", n, "--samples", "512"]))
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect()
}

#[test]
fn phi_samples() {
    let pi = std::f64::consts::PI;
    let s10 = phi_column("10");
    assert_eq!(s10.len(), 512);
    assert!(s10.iter().all(|&(w, p)| w != 0.0 && w.abs() < pi && p.abs() < 0.2 * pi));
    assert!(s10.iter().zip(s10.iter().rev()).all(|(a, b)| a.0 == -b.0 && a.1 == -b.1));
    let s40 = phi_column("40");
    let max = |v: &[(f64, f64)]| v.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    assert!(max(&s40) < max(&s10));
}

fn simulate_success(extra: &[&str]) -> f64 {
    let mut args = vec!["simulate", "--n", "12", "--omega", "2pi/3", "--format", "json"];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    json(&o)["rows"][0]["success_probability"].as_f64().unwrap()
}

#[test]
fn simulate_engines_agree() {
    let full = simulate_success(&["--engine", "full", "--j", "5"]);
    let reduced = simulate_success(&["--engine", "reduced", "--j", "5"]);
    assert!((full - reduced).abs() < 1e-10);
    let kick = simulate_success(&["--engine", "full", "--j", "5", "--oracle", "kickback"]);
    assert!((full - kick).abs() < 1e-12);
    let two_full = simulate_success(&["--engine", "full", "--solutions", "2", "--j", "5", "--j2", "1000"]);
    let two_red = simulate_success(&["--solutions", "2", "--j", "5", "--j2", "1000"]);
    assert!((two_full - two_red).abs() < 1e-10);
    assert_eq!(run(&["simulate", "--n", "4", "--omega", "pi/2", "--solutions", "2"]).status.code(), Some(2));
}

#[test]
fn spectrum_has_n_plus_one_pairs() {
    let v = json(&run(&["spectrum", "--n", "20", "--omega", "pi/2"]));
    assert_eq!(v["report"]["spectral"]["eigenpairs"].as_array().unwrap().len(), 21);
    assert_eq!(v["command"], "spectrum");
}

#[test]
fn report_commands() {
    let v = json(&run(&["lemma"]));
    assert!(v["report"]["moments"].as_array().unwrap().iter().all(|m| m["bounds_hold"] == true));
    let v = json(&run(&["aqc", "--n", "10"]));
    let mu = v["report"][0]["gap_scan"]["mu_star"].as_f64().unwrap();
    assert!((mu - 0.5).abs() < 1e-6);
    let v = json(&run(&["evolve", "--n", "4", "--time", "200", "--grover-checkpoints"]));
    assert!(v["report"]["final_ground_overlap"].as_f64().unwrap() > 0.99);
}

#[test]
fn cost_ratios() {
    let v = json(&run(&["cost", "--n", "20", "--omega", "pi", "--format", "json"]));
    let c = &v["report"]["comparison"];
    assert_eq!(c["circuit_iterations"], 804);
    assert_eq!(c["ratio_serial"].as_f64(), Some(1.0));
    let v = json(&run(&["cost", "--n", "20", "--omega", "4pi/5", "--t-multi", "50", "--format", "json"]));
    let c = &v["report"]["comparison"];
    assert!(c["t_new_parallel"].as_f64().unwrap() < c["t_grover"].as_f64().unwrap());
}

#[test]
fn negative_phases_parse() {
    let o = run(&["table", "--n", "10", "--omega", "-pi/4,0.5pi"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\n10,-pi/4,separable,"));
    assert_eq!(run(&["simulate", "--n", "6", "--omega", "-1.0"]).status.code(), Some(0));
}
