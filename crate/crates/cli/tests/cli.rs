use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn boxikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxikit"))
        .args(args)
        .env_remove("BOXIKIT_MAX_NONEDGES")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, bytes).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn report_for_tcc_111() {
    let out = boxikit(&["report", "--params", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64(), v["exact"].as_u64()), (Some(2), Some(2), Some(2)));
    assert_eq!(v["status"], "exact");
    let components = v["witness"]["components"].as_array().unwrap();
    assert_eq!(components.len(), 1);
    assert_eq!(components[0]["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["witness"]["join_verified"], true);
}

#[test]
fn report_skips_infeasible_oracle() {
    let out = boxikit(&["report", "--params", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(2), Some(3)));
    assert!(v["exact"].is_null());
    assert_eq!(v["status"], "skipped: oracle-infeasible");
}

#[test]
fn divisor_12_is_one_dimensional() {
    let out = boxikit(&["represent", "--family", "divisor", "--n", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["representation"]["dimension"], 1);
    assert_eq!(v["verified"], true);
}

#[test]
fn build_represent_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--family", "tcc", "--params", "1,2,3"],
        &["--family", "tcc", "--params", "3,1"],
        &["--family", "tcc", "--params", "2"],
        &["--family", "divisor", "--n", "360"],
        &["--family", "divisor", "--n", "7"],
        &["--family", "power-cyclic", "--n", "12"],
        &["--family", "power-cyclic", "--n", "30"],
    ];
    for case in cases {
        for extra in [&[][..], &["--unit"], &["--unit", "--translate"]] {
            let graph = boxikit(&[&["build"], *case].concat());
            assert_eq!(graph.status.code(), Some(0), "{case:?}");
            let rep = boxikit(&[&["represent"], *case, extra].concat());
            assert_eq!(rep.status.code(), Some(0), "{case:?} {extra:?}");
            let g = write(dir.path(), "g.json", &graph.stdout);
            let r = write(dir.path(), "r.json", &rep.stdout);
            let check = boxikit(&["verify", "--graph", s(&g), "--rep", s(&r)]);
            assert_eq!(check.status.code(), Some(0), "{case:?} {extra:?}");
            assert_eq!(stdout_json(&check)["status"], "ok");
        }
    }
}

#[test]
fn tampered_representation_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &boxikit(&["build", "--family", "divisor", "--n", "12"]).stdout);
    let mut rep = stdout_json(&boxikit(&["represent", "--family", "divisor", "--n", "12"]));
    // Pull the upper endpoint of vertex 1 down to its lower endpoint. The
    // lengths are no longer uniform, so the unit-length claim goes too.
    let lo = rep["representation"]["boxes"]["1"][0][0].clone();
    rep["representation"]["boxes"]["1"][0][1] = lo;
    rep["representation"].as_object_mut().unwrap().remove("unit_lengths");
    let r = write(dir.path(), "r.json", rep.to_string().as_bytes());
    let out = boxikit(&["verify", "--graph", s(&g), "--rep", s(&r)]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "failure");
    assert_eq!(v["kind"], "missing-edge");
    assert_eq!(v["pair"][0], "1");
}

#[test]
fn exact_on_c4() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = r#"{"vertices": ["a", "b", "c", "d"], "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]}"#;
    let g = write(dir.path(), "c4.json", c4.as_bytes());
    let out = boxikit(&["exact", "--graph", s(&g), "--param", "boxicity"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 2);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["certificate"], serde_json::json!([[["a", "c"]], [["b", "d"]]]));

    let capped = boxikit(&["exact", "--graph", s(&g), "--param", "boxicity", "--cap", "1"]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(stdout_json(&capped)["status"], "skipped");
    assert_eq!(stderr_json(&capped)["error"]["kind"], "capacity");
}

#[test]
fn environment_limits_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &boxikit(&["build", "--family", "tcc", "--params", "2,2"]).stdout);
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_boxikit"))
            .args(["exact", "--graph", s(&g), "--param", "cubicity"])
            .env("BOXIKIT_MAX_NONEDGES", limit)
            .output()
            .unwrap()
    };
    assert_eq!(run("4").status.code(), Some(3));
    let out = run("9");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 2);
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn realizer_for_six() {
    let out = boxikit(&["realizer", "--n", "6", "--verify", "--exact-dim"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["realizer"]["extensions"], serde_json::json!([["1", "3", "2", "6"], ["1", "2", "3", "6"]]));
    assert_eq!(v["verification"]["status"], "ok");
    assert_eq!(v["dimension"]["dimension"], 2);
}

#[test]
fn bounds_and_witness() {
    let v = stdout_json(&boxikit(&["bounds", "--params", "1,2,3"]));
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(3), Some(3)));
    let w = stdout_json(&boxikit(&["witness", "--params", "1,2,2"]));
    assert_eq!(w["components"].as_array().unwrap().len(), 2);
    assert_eq!(w["components"][1]["vertices"], serde_json::json!(["(1,1,2)", "(1,2,1)"]));
}

#[test]
fn errors_are_json_with_exit_codes() {
    let unsorted = boxikit(&["bounds", "--params", "3,1"]);
    assert_eq!(unsorted.status.code(), Some(2));
    assert_eq!(stderr_json(&unsorted)["error"]["kind"], "input");

    let bad_flag = boxikit(&["build", "--family", "nope"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    assert_eq!(stderr_json(&bad_flag)["error"]["kind"], "input");

    let missing = boxikit(&["build", "--family", "divisor"]);
    assert_eq!(missing.status.code(), Some(2));

    let too_big = boxikit(&["build", "--family", "power-cyclic", "--n", "100000"]);
    assert_eq!(too_big.status.code(), Some(3));
    assert_eq!(stderr_json(&too_big)["error"]["kind"], "capacity");

    let missing_file = boxikit(&["verify", "--graph", "/nonexistent/g.json", "--rep", "/nonexistent/r.json"]);
    assert_eq!(missing_file.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", &boxikit(&["build", "--family", "crown", "--s", "4"]).stdout);
    let commands: &[&[&str]] = &[
        &["report", "--params", "1,2,2"],
        &["represent", "--family", "power-cyclic", "--n", "60", "--unit"],
        &["exact", "--graph", s(&g), "--param", "boxicity"],
        &["exact", "--graph", s(&g), "--param", "cubicity"],
        &["realizer", "--n", "60", "--exact-dim"],
    ];
    for args in commands {
        let (a, b) = (boxikit(args), boxikit(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verbose_summary_goes_to_stderr() {
    let out = boxikit(&["--verbose", "bounds", "--params", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lower 1, upper 1"));
    stdout_json(&out);
}
