use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kronrep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kronrep")).args(args).current_dir(dir).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

const P1R3: &str = r#"{"r":3,"dim":[1,3],"maps":[[["1"],["0"],["0"]],[["0"],["1"],["0"]],[["0"],["0"],["1"]]]}"#;

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p1r3.json"), P1R3).unwrap();
    dir
}

#[test]
fn split_of_p1_at_a_coordinate_plane() {
    let dir = workdir();
    let out = kronrep(&["split", "--rep", "p1r3.json", "--line", "1,0,0;0,1,0"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["splitting"]["b"], serde_json::json!({"0": 1, "1": 1}));
    assert_eq!(r["invocation"]["inputs"]["p1r3.json"]["dim"], serde_json::json!([1, 3]));
}

#[test]
fn construct_ex_writes_report() {
    let dir = workdir();
    std::fs::write(dir.path().join("planes.json"), r#"["1,0,0;0,1,0"]"#).unwrap();
    let args = ["construct", "ex", "--r", "3", "--planes", "planes.json", "--seed", "7", "--out", "ex.json"];
    let out = kronrep(&args, dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("ex.json")).unwrap();
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["result"]["rep"]["dim"], serde_json::json!([4, 10]));
    assert_eq!(r["invocation"]["seed"], 7);

    let again = kronrep(&args, dir.path());
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.path().join("ex.json")).unwrap(), text);
}

#[test]
fn adjoint_check_passes_all_trials() {
    let dir = workdir();
    let out = kronrep(&["adjoint-check", "--d", "2", "--r", "3", "--seed", "1", "--trials", "50"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["trials"], 50);
    assert_eq!(r["result"]["passed"], 50);
}

#[test]
fn refuted_construction_exits_with_two() {
    let dir = workdir();
    let out = kronrep(&["construct", "chen", "--m", "2", "--n", "5"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["result"]["name"], "chen");
    let ok = kronrep(&["construct", "chen", "--m", "2", "--n", "3"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_with_one() {
    let dir = workdir();
    let out = kronrep(&["split", "--rep", "p1r3.json", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    std::fs::write(dir.path().join("bad.json"), r#"{"r":3,"dim":[1,3],"maps":[[["1"]]]}"#).unwrap();
    let out = kronrep(&["inspect", "--rep", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("maps"));
    let out = kronrep(&["split", "--rep", "p1r3.json", "--line", "1,x,0"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inspect_and_jump() {
    let dir = workdir();
    let r = report(&kronrep(&["inspect", "--rep", "p1r3.json"], dir.path()));
    assert_eq!(r["result"]["stabilizer_dim"], 10);
    assert_eq!(r["result"]["is_brick"], true);
    let r = report(&kronrep(&["jump", "--rep", "p1r3.json", "--line", "1,0,0;0,1,0"], dir.path()));
    assert_eq!(r["result"]["jumping"]["in_rank_variety"], false);
}

#[test]
fn oracle_finds_image_subspace() {
    let dir = workdir();
    let out = kronrep(&["oracle", "--rep", "p1r3.json", "--p", "2", "--e", "0,1"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["search"]["exists"], true);
    let out = kronrep(&["oracle", "--rep", "p1r3.json", "--e", "1,1"], dir.path());
    assert_eq!(report(&out)["result"]["search"]["exists"], false);
}

#[test]
fn decompose_and_certify_are_deterministic() {
    let dir = workdir();
    let args = ["certify", "--rep", "p1r3.json", "--lines", "5", "--seed", "3"];
    let a = kronrep(&args, dir.path());
    let b = kronrep(&args, dir.path());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let r = report(&kronrep(&["decompose", "--rep", "p1r3.json", "--lines", "5"], dir.path()));
    assert_eq!(r["result"]["generic"]["b"], serde_json::json!({"0": 1, "1": 1}));
}
