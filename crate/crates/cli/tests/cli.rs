use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const SL2_MATS: &str = "[[1,1],[0,1]],[[0,-1],[1,0]]";

fn knot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knot"))
        .args(args)
        .env_remove("KNOT_CAP")
        .output()
        .expect("binary runs")
}

fn knot_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_knot"))
        .args(args)
        .env_remove("KNOT_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn temp_path(tag: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("knot-cli-{}-{tag}", std::process::id()))
}

#[test]
fn zoo_families() {
    let out = knot(&["zoo", "P'2", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["order"], 27);
    assert_eq!(v["exponent"], 3);
    assert_eq!(v["transitive"], true);
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["group"]["degree"], 9);

    let v = json(&knot(&["zoo", "P2", "--p", "3"]));
    assert_eq!((v["order"].as_u64(), v["exponent"].as_u64()), (Some(27), Some(9)));

    let v = json(&knot(&["zoo", "semidirect-std", "--p", "3", "--mats", SL2_MATS]));
    assert_eq!(v["order"], 216);
    assert!(v["distinguished"]["generators"].is_array());

    let v = json(&knot(&["zoo", "E", "--p", "5", "--n", "2"]));
    assert_eq!(v["order"], 25);
}

#[test]
fn zoo_errors() {
    assert_eq!(code(&knot(&["zoo", "Q8"])), 2);
    assert_eq!(code(&knot(&["zoo", "P2"])), 2);
    assert_eq!(code(&knot(&["zoo", "semidirect-std", "--p", "3", "--mats", "[[1,1],[1,1]]"])), 2);
    assert_eq!(code(&knot(&["zoo", "semidirect-std", "--p", "3", "--mats", "[[1,1]"])), 2);
}

#[test]
fn star_group_with_cyclic_decomposition_groups() {
    let out = knot(&["sha", "--group", "semidirect-std", "--p", "3", "--mats", SL2_MATS]);
    assert_eq!(code(&out), 10);
    let v = json(&out);
    assert_eq!(v["report"]["decision"], "Z/p");
    assert_eq!(v["report"]["sha_invariants"], serde_json::json!([3]));
    assert_eq!(v["report"]["group_order"], 216);
    assert_eq!(v["weak_approximation_defect"], serde_json::json!([]));
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn translations_in_the_decomposition_set() {
    let doc = r#"{
        "group": {"name": "semidirect-std", "p": 3, "matrices": [[[1,1],[0,1]],[[0,-1],[1,0]]]},
        "decomposition_groups": [[[1,2,0,4,5,3,7,8,6],[3,4,5,6,7,8,0,1,2]]]
    }"#;
    let out = knot_stdin(&["sha", "-"], doc);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["report"]["decision"], "trivial");
    assert_eq!(v["report"]["decomposition"]["contains_cp2"], true);
    // H¹(Pic) is Z/3 but Sha vanishes, so the defect is all of it
    assert_eq!(v["weak_approximation_defect"], serde_json::json!([3]));
}

#[test]
fn cyclic_degree_nine_is_trivial() {
    let out = knot(&["sha", "--group", "C9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["decision"], "trivial");
    let doc = r#"{"group": {"name": "C9"}, "decomposition_groups": [[[1,2,3,4,5,6,7,8,0]]]}"#;
    assert_eq!(code(&knot_stdin(&["sha", "-"], doc)), 0);
}

#[test]
fn malformed_input_exits_with_two() {
    let out = knot_stdin(&["sha", "-"], r#"{"group": {"degree": 3, "generators": [[0, 0, 1]]}}"#);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators[0]"));

    let out = knot_stdin(&["sha", "-"], "{\"group\":\n  {\"degree\": 9,, }}");
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2 column"));

    let out = knot_stdin(&["sha", "-"], r#"{"group": {"name": "C9"}, "stabilizer_point": 12}"#);
    assert_eq!(code(&out), 2);

    let out = knot_stdin(&["sha", "-"], r#"{"group": {"name": "C9"}, "methods": ["oracle"]}"#);
    assert_eq!(code(&out), 2);

    assert_eq!(code(&knot(&["sha", "/nonexistent/doc.json"])), 2);
    assert_eq!(code(&knot(&["sha"])), 2);
}

#[test]
fn method_selection() {
    let doc = r#"{"group": {"name": "P'1", "p": 3}, "methods": ["classifier"]}"#;
    let v = json(&knot_stdin(&["sha", "-"], doc));
    assert_eq!(v["report"]["method"], "classifier");
    assert!(v.get("weak_approximation_defect").is_none());
    let v = json(&knot_stdin(&["sha", "-", "--method", "cohomology", "--fast-p-part"], doc));
    assert_eq!(v["report"]["method"], "cohomology");
    assert_eq!(v["report"]["sha_invariants"], serde_json::json!([3]));
}

#[test]
fn degree_four_needs_the_cohomology_method() {
    let v4 = r#"{"group": {"degree": 4, "generators": [[1,0,3,2],[2,3,0,1]]}}"#;
    assert_eq!(code(&knot_stdin(&["sha", "-"], v4)), 2);
    let out = knot_stdin(&["sha", "-", "--method", "cohomology"], v4);
    assert_eq!(code(&out), 10);
    assert_eq!(json(&out)["report"]["sha_invariants"], serde_json::json!([2]));
}

#[test]
fn output_is_byte_stable_and_hash_is_attributable() {
    let args = ["sha", "--group", "P'2", "--p", "3", "--jobs", "2"];
    let a = knot(&args);
    let b = knot(&args);
    assert_eq!(a.stdout, b.stdout);
    let inline = json(&a)["input_hash"].clone();
    let doc = r#"{"group": {"name": "P'2", "p": 3, "n": null, "matrices": []}, "stabilizer_point": 0}"#;
    let from_doc = json(&knot_stdin(&["sha", "-"], doc))["input_hash"].clone();
    assert_eq!(inline, from_doc);
    let other = json(&knot(&["sha", "--group", "P2", "--p", "3"]))["input_hash"].clone();
    assert_ne!(inline, other);
}

#[test]
fn out_flag_writes_the_report() {
    let path = temp_path("sha.json");
    let out = knot(&["sha", "--group", "P'1", "--p", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 10);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["report"]["decision"], "Z/p");
}

#[test]
fn order_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_knot"))
        .args(["zoo", "semidirect-std", "--p", "3", "--mats", SL2_MATS])
        .env("KNOT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn h1pic_and_adequacy() {
    assert_eq!(code(&knot(&["h1pic", "--group", "P'1", "--p", "3"])), 10);
    let out = knot(&["h1pic", "--group", "P2", "--p", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["invariants"], serde_json::json!([]));

    let out = knot(&["adequacy", "--group", "semidirect-std", "--p", "3", "--mats", SL2_MATS]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["adequate"], false);
    let doc = r#"{
        "group": {"name": "semidirect-std", "p": 3, "matrices": [[[1,1],[0,1]],[[0,-1],[1,0]]]},
        "decomposition_groups": [[[1,2,0,4,5,3,7,8,6],[3,4,5,6,7,8,0,1,2]]]
    }"#;
    assert_eq!(json(&knot_stdin(&["adequacy", "-"], doc))["adequate"], true);
}

#[test]
fn verify_suites() {
    let out = knot(&["verify", "p3-pgroups"]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table.matches("PASS").count(), 5);
    assert!(table.contains("5 passed, 0 failed"));

    let path = temp_path("verify.json");
    let out = knot(&["verify", "p3-classification", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["failed"], 0);
    let stars = v["cases"].as_array().unwrap().iter().filter(|c| c["expected"] == serde_json::json!([3]));
    assert_eq!(stars.count(), 7);

    assert_eq!(code(&knot(&["verify", "oracles"])), 0);
    assert_eq!(code(&knot(&["verify", "no-such-suite"])), 2);
}
