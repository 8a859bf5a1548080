use std::path::PathBuf;

use serde_json::Value;
use softpulse::config::{parse_config, write_config, MoleculeConfig};

fn bundled() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs/alanine.json")
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["softpulse"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = softpulse_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn bundled_config_has_alanine_values() {
    let c = parse_config(bundled()).unwrap();
    assert_eq!(c, MoleculeConfig::alanine());
    assert_eq!((c.j12_hz, c.j23_hz, c.delta12_hz, c.delta13_hz), (34.8, 53.8, -4320.0, -20100.0));
}

#[test]
fn config_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let cfg = MoleculeConfig {
        label: "test chain".into(),
        j12_hz: 12.5,
        j23_hz: 71.25,
        delta12_hz: 900.0,
        delta13_hz: -3.5e4,
    };
    std::fs::write(&path, write_config(&cfg)).unwrap();
    assert_eq!(parse_config(&path).unwrap(), cfg);
}

#[test]
fn solve_reports_soft_pulse() {
    let v = json(&["solve", "--config", &bundled(), "--alpha", "pi"]);
    assert_eq!(v["n"], 1);
    assert!((v["omega1_hz"].as_f64().unwrap() - 106.0).abs() < 1.0);
    assert!((v["tau_ms"].as_f64().unwrap() - 9.29).abs() < 0.01);
    assert_eq!(v["cancellation_ok"], true);
}

#[test]
fn landscape_two_by_two_has_four_rows() {
    let (code, out, err) = run(&["landscape", "--config", &bundled(), "--nx", "2", "--ny", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "tau_tilde,omega_tilde,fidelity");
    assert_eq!(lines.len(), 5);
    assert!(err.contains("tau_tilde=0"));
    // corner (1, 1) is the full-width full-amplitude pulse
    let last: Vec<f64> = lines[4].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(&last[..2], &[1.0, 1.0]);
    assert!((last[2] - 0.998).abs() < 0.001);
}

#[test]
fn optimize_reaches_high_fidelity() {
    let v = json(&["optimize", "--config", &bundled()]);
    assert!((v["fidelity"].as_f64().unwrap() - 0.999).abs() < 0.001);
    for key in ["tau_tilde", "omega_tilde", "tau_s", "omega1_hz"] {
        assert!(v[key].is_number(), "{key}");
    }
}

#[test]
fn bs_table_matches_hard_pulse_shifts() {
    let (code, out, _) = run(&["bs", "--omega-hz", "714", "--tau-ms", "0.7"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["spectator", "epsilon", "approx_rad", "exact_rad", "rel_err"]);
    assert_eq!(rows[1][0], "2");
    assert!((rows[1][2].parse::<f64>().unwrap() + 0.260).abs() < 0.002);
    assert!((rows[2][2].parse::<f64>().unwrap() + 0.0559).abs() < 0.002);
}

#[test]
fn qec_reports_identities_and_recovery() {
    let v = json(&["qec", "--ideal", "--probs", "0.1,0.2,0.3,0.4", "--trials", "20"]);
    let ids = v["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 4);
    assert!(ids.iter().all(|i| i["holds"] == true));
    assert_eq!(v["recovery_min"], 1.0);

    let v = json(&["qec", "--full", "--trials", "10"]);
    assert_eq!(v["mode"], "full");
    assert!(v["recovery_min"].as_f64().unwrap() >= 0.95);
}

#[test]
fn simulate_sequence_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.json");
    // soft pulse at the solved amplitude, reduced model
    let (_, out, _) = run(&["solve"]);
    let sol: Value = serde_json::from_str(&out).unwrap();
    let seq = serde_json::json!([{
        "duration_s": sol["tau_ms"].as_f64().unwrap() * 1e-3,
        "amplitude_hz": sol["omega1_hz"],
        "phase_rad": 0.0,
        "model": "reduced"
    }]);
    std::fs::write(&path, seq.to_string()).unwrap();
    let v = json(&["simulate", "--sequence", path.to_str().unwrap()]);
    assert_eq!(v["model"], "reduced");
    // inputs are rounded to 6 digits, so only near-perfect
    assert!(v["fidelity"].as_f64().unwrap() > 0.9999);

    let v = json(&["simulate", "--tau-tilde", "1", "--omega-tilde", "0.987"]);
    assert!((v["fidelity"].as_f64().unwrap() - 0.999).abs() < 0.001);
    assert_eq!(v["segments"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["landscape", "--nx", "5", "--ny", "4"],
        vec!["qec", "--full", "--trials", "5"],
        vec!["solve", "--alpha", "pi/2"],
        vec!["bs", "--soft"],
    ] {
        assert_eq!(run(&args), run(&args), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["solve", "--alpha", "banana"]).0, 2);
    assert_eq!(run(&["qec", "--ideal", "--full"]).0, 2);
    assert_eq!(run(&["qec", "--probs", "0.5,0.5,0.5,0.5"]).0, 2);
    assert_eq!(run(&["simulate"]).0, 2);
    assert_eq!(run(&["solve", "--config", "/no/such/file.json"]).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"label":"x","j12_hz":34.8,"delta12_hz":1,"delta13_hz":2}"#).unwrap();
    let (code, _, err) = run(&["solve", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("j23_hz"), "{err}");
}

#[test]
fn computation_errors_exit_one() {
    assert_eq!(run(&["solve", "--alpha", "0"]).0, 1);
    assert_eq!(run(&["landscape", "--nx", "1"]).0, 1);
}

#[test]
fn help_goes_to_stdout_with_success() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("landscape"));
}
