use std::path::Path;
use std::process::{Command, Output};

fn crob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crob"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write_election(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SMALL: &str = r#"{"candidates": ["a", "b", "c"],
  "votes": [["a", "b", "c"], ["a", "c", "b"], ["b", "c", "a"]]}"#;

#[test]
fn winners_prints_the_tie_set() {
    let dir = tempfile::tempdir().unwrap();
    let e = write_election(dir.path(), "e.json", SMALL);
    let v = stdout_json(&crob(&["winners", "--rule", "sntv:k=1", "--election", &e]));
    assert_eq!(v["k"], 1);
    assert_eq!(v["committees"], serde_json::json!([["a"]]));
}

#[test]
fn preflib_input_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let soc = "# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 4\n3: 1,2,3\n1: 2,3,1\n";
    let e = write_election(dir.path(), "e.soc", soc);
    let v = stdout_json(&crob(&["winners", "--rule", "kborda:k=1", "--election", &e]));
    assert_eq!(v["committees"].as_array().unwrap().len(), 1);
}

#[test]
fn radius_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let e = write_election(dir.path(), "e.json", SMALL);
    let exact = stdout_json(&crob(&["radius", "--rule", "kborda:k=1", "--election", &e, "--method", "exact"]));
    let oracle = stdout_json(&crob(&["radius", "--rule", "kborda:k=1", "--election", &e, "--method", "oracle"]));
    assert_eq!(exact["method"], "exact");
    assert_eq!(oracle["method"], "oracle");
    assert_eq!(exact["radius"], oracle["radius"]);
    assert_eq!(exact["witness"].as_array().unwrap().len() as u64, exact["radius"].as_u64().unwrap());
}

#[test]
fn construct_then_measure_level() {
    let dir = tempfile::tempdir().unwrap();
    let v = stdout_json(&crob(&["construct", "cc-chaos", "--k", "3"]));
    assert_eq!(v["swap"], serde_json::json!({"voter": 0, "position": 0}));
    let e = write_election(dir.path(), "cc.json", &v["election"].to_string());
    let level = stdout_json(&crob(&["level", "--rule", "cc:k=3", "--election", &e, "--swap", "0,0"]));
    assert_eq!(level["displacement"], 3);
}

#[test]
fn hybrid_needs_ell() {
    let out = crob(&["construct", "hybrid", "--k", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&crob(&["construct", "hybrid", "--k", "3", "--ell", "1"]));
    assert_eq!(v["rule"], "hybrid:k=3,ell=1");
}

#[test]
fn sample_is_seeded() {
    let a = crob(&["sample", "--distribution", "mallows:phi=0.5", "--m", "5", "--n", "8", "--seed", "9"]);
    let b = crob(&["sample", "--distribution", "mallows:phi=0.5", "--m", "5", "--n", "8", "--seed", "9"]);
    assert_eq!(stdout_json(&a), stdout_json(&b));
    let soc = crob(&["sample", "--m", "4", "--n", "3", "--format", "preflib"]);
    assert!(String::from_utf8(soc.stdout).unwrap().contains("# NUMBER VOTERS: 3"));
}

#[test]
fn experiment_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.toml");
    std::fs::write(
        &cfg,
        "m = 5\nn = 7\nk = 2\nsimulations = 4\ncap = 30\nseed = 3\nrules = [\"sntv\", \"copeland\"]\nout = \"r.csv\"\n",
    )
    .unwrap();
    let json = dir.path().join("r.json");
    let out = crob(&["experiment", "--config", cfg.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("rule,sim_index,swaps,censored"));
    assert_eq!(lines.count(), 2 * 4);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["rules"].as_array().unwrap().len(), 2);
    assert_eq!(report["rules"][0]["results"].as_array().unwrap().len(), 4);

    // same config, same bytes
    let again = dir.path().join("again.csv");
    let out = crob(&["experiment", "--config", cfg.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(again).unwrap(), csv);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let e = write_election(dir.path(), "e.json", SMALL);
    assert_eq!(crob(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(crob(&["winners", "--rule", "nope:k=1", "--election", &e]).status.code(), Some(3));
    assert_eq!(crob(&["winners", "--rule", "sntv:k=7", "--election", &e]).status.code(), Some(1));
    let broken = write_election(dir.path(), "bad.json", "{\"candidates\": [");
    assert_eq!(crob(&["winners", "--rule", "sntv:k=1", "--election", &broken]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_crob"))
        .args(["radius", "--rule", "ned:k=1", "--election", &e, "--max-depth", "4"])
        .env("CROB_BFS_STATES", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(crob(&["--help"]).status.code(), Some(0));
}
