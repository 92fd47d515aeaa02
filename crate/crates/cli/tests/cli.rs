use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn tilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn check_tilting_a2() {
    let ws = fixture("FIX-A2.json");
    let o = tilt(&["check-tilting", "-w", &ws, "--module", "T", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "check-tilting");
    assert_eq!(v["verified"], true);
    assert_eq!(v["report"]["axioms"]["T1"]["pd"], 1);
}

#[test]
fn check_tilting_rejects_a_non_tilting_module() {
    let ws = fixture("FIX-A2.json");
    // S2 has projective dimension 1 but is not tilting
    let o = tilt(&["check-tilting", "-w", &ws, "--module", "S2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verified"], false);
}

#[test]
fn miyashita_on_a2() {
    let ws = fixture("FIX-A2.json");
    let o = tilt(&["miyashita", "-w", &ws, "--module", "S2", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("miyashita: verified"));
}

#[test]
fn good_tilt_symbols() {
    let o = tilt(&["good-tilt", "--symbols", "T0,T1,T2", "--text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T0 ⊕ T1^(ω) ⊕ T2^(ω)"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tilt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tilt(&["ext", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(tilt(&["derived-unit", "--window", "3:1"]).status.code(), Some(2));
    let ws = fixture("FIX-A2.json");
    let o = tilt(&["ext", "-w", &ws, "--module", "Nope", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Nope"));
}

#[test]
fn window_too_small_is_an_error() {
    let ws = fixture("FIX-N3.json");
    let o = tilt(&["derived-unit", "-w", &ws, "--smodule", "S", "--window", "-1:0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window too small"));
}

#[test]
fn falsified_equivalence_exits_1() {
    let ws = fixture("FIX-A2.json");
    let o = tilt(&["equivalence", "-w", &ws, "--other", "R", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["report"]["equivalent"], false);
}

#[test]
fn json_reports_round_trip() {
    let ws = fixture("FIX-N3.json");
    let o = tilt(&["class", "-w", &ws, "--module", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["index"], 2);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert_eq!(v.as_object().unwrap().len(), 3);
}

#[test]
fn ext_and_endo_values() {
    let ws = fixture("FIX-N3.json");
    let o = tilt(&["ext", "-w", &ws, "--module", "S3", "--degree", "2"]);
    assert_eq!(json(&o)["report"]["dim"], 1);
    let o = tilt(&["endo", "-w", &ws]);
    assert_eq!(json(&o)["report"]["dim"], 5);
}

#[test]
fn random_suites_are_deterministic() {
    let ws = fixture("FIX-N3.json");
    let args = ["derived-counit", "-w", &ws, "--seed", "42", "--count", "4"];
    let a = tilt(&args);
    let b = tilt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["report"]["seed"], 42);
}

#[test]
fn probe_and_membership() {
    let ws = fixture("FIX-A2.json");
    let o = tilt(&["classical-probe", "-w", &ws, "--count", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = tilt(&["e-member", "-w", &ws, "--smodule", "E1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["in_e"], false);
}
