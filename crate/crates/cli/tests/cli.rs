use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn tiltlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltlab"))
        .args(args)
        .env_remove("TILTLAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn assert_golden(args: &[&str], golden: &str) {
    let out = tiltlab(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let expected = std::fs::read_to_string(fixture(golden)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "golden {golden}");
}

#[test]
fn golden_reports() {
    assert_golden(&["classify", "--ring", "Z/12"], "classify_z12.golden.json");
    assert_golden(
        &["gabriel-member", "--ring", "Z", "--basis", "(2),(3)", "--ideal", "(6)"],
        "gabriel_member_6.golden.json",
    );
    assert_golden(
        &["fuchs-salce", "--ring", "Z", "--ideals", "(2:4,6);(3:3)", "--depth", "2", "--verify", "all"],
        "fuchs_salce_depth2.golden.json",
    );
    let m = fixture("z_mod_2.json");
    let n = fixture("z_two_gens.json");
    let (m, n) = (m.to_str().unwrap(), n.to_str().unwrap());
    let out = tiltlab(&["check-lemma", "--m", m, "--n", n]);
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(fixture("check_lemma.golden.json")).unwrap()).unwrap();
    assert_eq!(json(&out), expected);
}

#[test]
fn classify_lists_only_the_trivial_class() {
    let out = tiltlab(&["classify", "--ring", "Z/12"]);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"][0]["basis"][0], "(1)");
}

#[test]
fn reports_are_deterministic() {
    let args = ["fuchs-salce", "--ring", "GF(5)[x]", "--ideals", "(x:x)", "--depth", "3", "--verify", "all"];
    assert_eq!(tiltlab(&args).stdout, tiltlab(&args).stdout);
}

#[test]
fn membership_verdicts_and_exit_codes() {
    let z3 = fixture("z_mod_3.json");
    let z3 = z3.to_str().unwrap();
    let out = tiltlab(&["member", "--class", "tilting", "--module", z3, "--basis", "(2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], true);

    let out = tiltlab(&["member", "--class", "tilting", "--module", z3, "--basis", "(3)"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], false);

    let out = tiltlab(&["member", "--class", "cotilting", "--module", z3, "--basis", "(2)"]);
    assert_eq!(json(&out)["verdict"], true);

    let out = tiltlab(&["gabriel-member", "--ring", "Z", "--basis", "(2)", "--ideal", "(6)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn errors_exit_with_two() {
    let out = tiltlab(&["classify", "--ring", "GF(4)[x]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));

    let out = tiltlab(&["classify", "--ring", "Z/"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column"));

    // infinite spectrum
    assert_eq!(tiltlab(&["classify", "--ring", "Z"]).status.code(), Some(2));
    // hypothesis M* = 0 fails for a free module
    let m = r#"{"ring":"Z","ngens":1,"relations":[[]]}"#;
    assert_eq!(tiltlab(&["check-lemma", "--m", m, "--n", m]).status.code(), Some(2));
    assert_eq!(tiltlab(&["frobnicate"]).status.code(), Some(2));
    // s must be regular
    assert_eq!(
        tiltlab(&["localize", "--ring", "Z/4", "--s", "2", "--gabriel", "(1)"]).status.code(),
        Some(2)
    );
}

#[test]
fn oracle_bound_comes_from_config() {
    let args = ["gabriel-member", "--ring", "Z", "--basis", "(2)", "--ideal", "(128)"];
    // seven factors of (2) are needed: the default bound disagrees with the prime test
    let out = tiltlab(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle disagreement"));

    let conf = fixture("oracle8.conf");
    let mut with_config = vec!["--config", conf.to_str().unwrap()];
    with_config.extend(args);
    let out = tiltlab(&with_config);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["oracle_bound"], 8);

    let out = Command::new(env!("CARGO_BIN_EXE_tiltlab"))
        .args(args)
        .env("TILTLAB_CONFIG", &conf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn localize_reports_witness_stages() {
    let out = tiltlab(&["localize", "--ring", "Z", "--s", "2", "--gabriel", "(2)", "--bound", "10", "--compare", "3"]);
    let v = json(&out);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["witnesses"][0]["stage"], 1);
    assert_eq!(v["tower_comparison"]["agree"], true);

    let out = tiltlab(&["localize", "--ring", "Z", "--s", "2", "--gabriel", "(6)", "--bound", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witnesses"][0]["stage"], Value::Null);
}

#[test]
fn session_save_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("s.json");
    let s = session.to_str().unwrap();
    let z3 = fixture("z_mod_3.json");

    let steps: Vec<Vec<&str>> = vec![
        vec!["--session", s, "ctr", "--ring", "Z", "--ideal", "(4,6)", "--name", "c"],
        vec!["--session", s, "dagger", "--module", "@c", "--name", "d"],
        vec!["--session", s, "transpose", "--module", z3.to_str().unwrap(), "--name", "t"],
        vec!["--session", s, "thomason", "--basis", "(2);(9)", "--name", "x"],
        vec!["--session", s, "gabriel-member", "--basis", "@x", "--ideal", "(6)", "--name", "g"],
        vec!["--session", s, "fuchs-salce", "--ideals", "(2:2)", "--depth", "2", "--name", "tree"],
    ];
    for step in &steps {
        let out = tiltlab(step);
        assert_eq!(out.status.code(), Some(0), "{step:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = tiltlab(&["--session", s, "member", "--class", "tilting", "--module", "@d", "--basis", "@g"]);
    assert_eq!(out.status.code(), Some(1), "Z/2 is not 2-divisible");

    let saved = dir.path().join("saved.json");
    let out = tiltlab(&["--session", s, "save", saved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&saved).unwrap(), std::fs::read(&session).unwrap());

    let out = tiltlab(&["load", saved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["replay_identical"], true);
    assert_eq!(v["objects"].as_array().unwrap().len(), 6);

    // loading into another session file copies it byte for byte
    let copy = dir.path().join("copy.json");
    let out = tiltlab(&["--session", copy.to_str().unwrap(), "load", saved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&copy).unwrap(), std::fs::read(&saved).unwrap());

    // a tampered object no longer matches its log
    let text = std::fs::read_to_string(&saved).unwrap().replace("\"depth\": 2", "\"depth\": 3");
    std::fs::write(&saved, text).unwrap();
    let out = tiltlab(&["load", saved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["replay_identical"], false);
}

#[test]
fn session_ring_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let s = s.to_str().unwrap();
    assert_eq!(tiltlab(&["--session", s, "ctr", "--ring", "Z", "--ideal", "(2)", "--name", "a"]).status.code(), Some(0));
    let out = tiltlab(&["--session", s, "ctr", "--ring", "Z/4", "--ideal", "(2)", "--name", "b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ring mismatch"));
}
