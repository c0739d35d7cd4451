use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use vertexlie::lie_core::presets;
use vertexlie::vertex_lie::builders::{corrupt_table, loop_algebra};
use vertexlie::vertex_lie::{VLConfig, VLStructure};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vertexlie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("JSON report"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn virasoro_bracket() {
    let o = run(&["bracket", "--builder", "virasoro", "--a", "omega", "--m", "3", "--b", "omega", "--n", "-1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "4*omega(1) + 1/2*c(-1)");
}

#[test]
fn virasoro_character() {
    let o = run(&["character", "--builder", "virasoro", "--lambda", "c=1/2", "--depth", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1,0,1,1,2,2,4,4,7,8,12");
}

#[test]
fn heisenberg_character_needs_lambda() {
    let o = run(&["character", "--builder", "heisenberg", "--lambda", "c=1", "--depth", "9"]);
    assert_eq!(stdout(&o).trim(), "1,1,2,3,5,7,11,15,22,30");
    let o = run(&["character", "--builder", "heisenberg"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("central character"));
}

#[test]
fn lattice_p2_rank_one() {
    let (c, v) = json(&["lattice", "p2", "--gram", "[[4]]"]);
    assert_eq!(c, 0);
    let r = &v["result"];
    assert_eq!(r["dim"], 7);
    assert_eq!(r["c2"].as_array().unwrap().len(), 3);
    assert!(r["mult_table"].is_array() && r["bracket_table"].is_array() && r["cocycle"].is_object());
    assert_eq!(r["basis"].as_array().unwrap().len(), 7);
}

#[test]
fn check_suites_pass() {
    for args in [
        vec!["check", "delta"],
        vec!["check", "vla", "--builder", "virasoro", "--window", "4"],
        vec!["check", "lattice", "--gram", "[[2]]"],
        vec!["check", "vacuum", "--builder", "affine-sl2", "--lambda", "c=1", "--depth", "4"],
        vec!["check", "p2", "--builder", "loop-sl2"],
        vec!["check", "all"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(code(&run(&["check", "everything"])), 2);
    assert_eq!(code(&run(&["bracket", "--builder", "nonesuch", "--a", "x", "--m", "0", "--b", "x", "--n", "0"])), 2);
    assert_eq!(code(&run(&["check", "vla", "--window", "-1"])), 2);
    assert_eq!(code(&run(&["character", "--lambda", "c=0.5"])), 2);
}

#[test]
fn malformed_config_reports_location() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "run.json", "{\"builder\": \"witt\",\n \"depht\": 3}");
    let o = run(&["check", "vla", "--config", path(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let p = write(&dir, "run.toml", "builder = \"witt\"\nwindow = \"four\"\n");
    let o = run(&["check", "vla", "--config", path(&p)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn toml_config_supplies_parameters() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "run.toml", "builder = \"virasoro\"\ndepth = 6\n\n[lambda]\nc = \"-22/5\"\n");
    let o = run(&["character", "--config", path(&p)]);
    assert_eq!(stdout(&o).trim(), "1,0,1,1,2,2,4");
    // flags override the file
    let o = run(&["character", "--config", path(&p), "--depth", "3"]);
    assert_eq!(stdout(&o).trim(), "1,0,1,1");
}

fn corrupted_config(dir: &TempDir) -> PathBuf {
    let s = loop_algebra(&presets::sl2()).unwrap();
    let bad = VLStructure::uncertified(corrupt_table(&s, 0)).unwrap();
    let cfg = serde_json::json!({ "structure": VLConfig::from_structure(&bad) });
    write(dir, "bad.json", &cfg.to_string())
}

#[test]
fn invalid_structure_is_a_mathematical_failure() {
    let dir = TempDir::new().unwrap();
    let p = corrupted_config(&dir);
    let o = run(&["check", "vla", "--config", path(&p), "--window", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    let (c, v) = json(&["check", "vla", "--config", path(&p), "--window", "3"]);
    assert_eq!(c, 1);
    assert_eq!(v["pass"], false);
    assert!(!v["checks"][0]["failures"].as_array().unwrap().is_empty());
    // commands that need a certified structure refuse it with a witness
    let o = run(&["bracket", "--config", path(&p), "--a", "e", "--m", "0", "--b", "f", "--n", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("invalid structure"));
}

#[test]
fn inline_structure_round_trips() {
    let dir = TempDir::new().unwrap();
    let s = loop_algebra(&presets::sl2()).unwrap();
    let cfg = serde_json::json!({ "structure": VLConfig::from_structure(&s) });
    let p = write(&dir, "good.json", &cfg.to_string());
    let o = run(&["bracket", "--config", path(&p), "--a", "e", "--m", "1", "--b", "f", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "h(3)");
}

#[test]
fn json_reports_are_reproducible() {
    let args = ["check", "all", "--seed", "11", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "vertexlie-report/1");
    assert_eq!(v["seed"], 11);
    assert_eq!(v["pass"], true);
    assert!(v.get("elapsed_ms").is_none());
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true && c["checked"].as_u64().unwrap() > 0));
    let (_, timed) = json(&["check", "delta", "--timing"]);
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn act_on_vacuum() {
    let o = run(&["act", "--builder", "virasoro", "--lambda", "c=1/2", "--word", "omega(3) omega(-1) omega(-1)"]);
    assert_eq!(code(&o), 0);
    // L(2) L(-2) L(-2)|0> = (8 + c) L(-2)|0>
    assert_eq!(stdout(&o).trim(), "17/2*omega(-1)|0>");
    let (c, v) = json(&["act", "--builder", "virasoro", "--lambda", "c=1/2", "--word", "omega(-1) omega(-1)"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["degree"], 4);
    assert_eq!(v["result"]["state"][0][0][0], serde_json::json!(["omega", -1]));
    assert_eq!(code(&run(&["act", "--word", "omega[-1]"])), 2);
}

#[test]
fn borcherds_selected_fields() {
    let o = run(&[
        "borcherds-check",
        "--builder",
        "virasoro",
        "--lambda",
        "c=1/2",
        "--a",
        "omega",
        "--b",
        "omega",
        "--depth",
        "4",
        "--window",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn poisson_quotients() {
    let (c, v) = json(&["p2", "--builder", "affine-sl2"]);
    assert_eq!(c, 0);
    let gens = v["result"]["generators"].as_array().unwrap();
    assert!(gens.iter().any(|g| g == "c"));
    let (c, v) = json(&["pvpa"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["generators"], serde_json::json!(["e", "h", "f"]));
    assert_eq!(code(&run(&["vp-check", "--preset", "ultra-sl2"])), 0);
    assert_eq!(code(&run(&["vp-check", "--preset", "sl2"])), 2);
}

#[test]
fn lattice_edge_cases() {
    let (c, v) = json(&["lattice", "c2-set", "--gram", "[[0,1],[1,0]]"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["definiteness"]["verdict"], "indefinite");
    assert_eq!(code(&run(&["lattice", "c2-set", "--gram", "[[2,2],[2,2]]"])), 2);
    assert_eq!(code(&run(&["lattice", "p2", "--gram", "[[3]]"])), 2);
    assert_eq!(code(&run(&["lattice", "p2", "--gram", "[[2,1]]"])), 2);
    let (c, v) = json(&["lattice", "poisson", "--gram", "[[2,-1],[-1,2]]"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["dim"], 19);
    let (c, v) = json(&["lattice", "bk-compare", "--gram", "[[6]]"]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["dim"], 9);
    assert_eq!(code(&run(&["lattice", "bk-compare"])), 2);
}

#[test]
fn decompose_inputs() {
    let dir = TempDir::new().unwrap();
    let p =
        write(&dir, "s.json", r#"{"terms":[{"order":0,"coeff":[[0,"1"]]},{"order":2,"coeff":[[-1,"2/3"],[1,"-1"]]}]}"#);
    let o = run(&["decompose", "--input", path(&p)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "(1)*Delta^(0) + (-y + 2/3*y^-1)*Delta^(2)");
    // promising too low an order leaves a residue
    assert_eq!(code(&run(&["decompose", "--input", path(&p), "--order", "0"])), 1);
    // the window must reach the residue columns
    assert_eq!(code(&run(&["decompose", "--input", path(&p), "--order", "3", "--window", "2"])), 2);
    let p = write(&dir, "c.json", r#"{"order":0,"cells":[[-1,0,"1"],[0,-1,"1"]]}"#);
    let (c, v) = json(&["decompose", "--input", path(&p)]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["terms"][0]["coeff"], serde_json::json!([[0, "1"]]));
    let p = write(&dir, "e.json", r#"{"cells":[[0,0,"1"]]}"#);
    assert_eq!(code(&run(&["decompose", "--input", path(&p)])), 2);
}

#[test]
fn documented_config_examples() {
    let dir = TempDir::new().unwrap();
    let vir = write(
        &dir,
        "vir.json",
        r#"{ "structure": {
            "basis": [{ "name": "omega", "degree": 2 }, { "name": "c", "degree": 0 }],
            "d": { "domain": ["c"] },
            "u0": ["c"],
            "brackets": [{ "a": "omega", "b": "omega", "terms": [
                { "f": [["omega", "1"]], "k": 1, "l": 0 },
                { "f": [["omega", "-2"]], "k": 0, "l": 1 },
                { "f": [["c", "-1/12"]], "k": 0, "l": 3 }
            ] }] } }"#,
    );
    let o = run(&["bracket", "--config", path(&vir), "--a", "omega", "--m", "3", "--b", "omega", "--n", "-1"]);
    assert_eq!(stdout(&o).trim(), "4*omega(1) + 1/2*c(-1)");
    let vp = write(
        &dir,
        "vp.json",
        r#"{ "vertex_poisson": { "basis": ["e", "h", "f"], "brackets": [
            { "a": "e", "b": "f", "terms": [{ "order": 0, "poly": [[[["h", 0]], "1"]] }] },
            { "a": "f", "b": "e", "terms": [{ "order": 0, "poly": [[[["h", 0]], "-1"]] }] }
        ] } }"#,
    );
    assert_eq!(code(&run(&["vp-check", "--config", path(&vp)])), 0);
    let (c, v) = json(&["pvpa", "--config", path(&vp)]);
    assert_eq!(c, 0);
    assert_eq!(v["result"]["brackets"], serde_json::json!([["e", "f", "h"]]));
    let floats = write(&dir, "f.toml", "builder = \"heisenberg\"\n[lambda]\nc = 1.5\n");
    assert_eq!(code(&run(&["character", "--config", path(&floats)])), 2);
}
