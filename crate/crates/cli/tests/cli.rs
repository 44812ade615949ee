use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn drinfeld(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = drinfeld(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn group_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn s3_double_irreps() {
    let rows = json(&["--preset", "S3", "--json", "double-irreps"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let squares: u64 = rows.iter().map(|r| r["dimension"].as_u64().unwrap().pow(2)).sum();
    assert_eq!(squares, 36);
}

#[test]
fn trivial_module_kernel_is_everything() {
    let v = json(&["--preset", "S3", "--json", "double-kernel", "--rep", "0:0"]);
    assert_eq!(v["rep"], "0:0");
    assert_eq!(v["kernel"].as_array().unwrap().len(), 3 * 6);
    assert_eq!(v["structured"]["f0_order"], 1);
    assert_eq!(v["structured"]["M0"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_passes_on_s3_and_q8() {
    for name in ["S3", "Q8"] {
        let out = drinfeld(&["--preset", name, "verify"]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("0 failed"));
    }
    let report = json(&["--preset", "S3", "--json", "verify"]);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn corrupted_table_is_a_verification_failure() {
    // Latin square with identity 0 that is not associative.
    let f = group_file(r#"{"table": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]}"#);
    let path = f.path().to_str().unwrap();
    let out = drinfeld(&["--group-file", path, "verify"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("group axioms"));
    let report: Value = serde_json::from_slice(&drinfeld(&["--group-file", path, "--json", "verify"]).stdout).unwrap();
    assert_eq!(report["checks"][0]["name"], "group axioms");
    assert_eq!(report["checks"][0]["status"], "fail");
    assert!(report["checks"][0]["counterexample"].is_string());
    // Other commands refuse the input as invalid rather than falsified.
    assert_eq!(code(&drinfeld(&["--group-file", path, "classes"])), 1);
}

#[test]
fn usage_and_input_errors_exit_one() {
    assert_eq!(code(&drinfeld(&["classes"])), 1);
    assert_eq!(code(&drinfeld(&["--preset", "S3", "double-kernel"])), 1);
    assert_eq!(code(&drinfeld(&["--preset", "S3", "frobnicate"])), 1);
    assert_eq!(code(&drinfeld(&["--preset", "X9", "classes"])), 1);
    assert_eq!(code(&drinfeld(&["--preset", "S3", "double-kernel", "--rep", "7:7"])), 1);
    assert_eq!(code(&drinfeld(&["--group-file", "/nonexistent/group.json", "classes"])), 1);
    let bad = group_file("{\"preset\": ");
    assert_eq!(code(&drinfeld(&["--group-file", bad.path().to_str().unwrap(), "classes"])), 1);
    assert_eq!(code(&drinfeld(&["--preset", "S3", "--cap", "size=3", "classes"])), 1);
}

#[test]
fn cap_exceeded_exits_two() {
    assert_eq!(code(&drinfeld(&["--preset", "S4", "--cap", "order=12", "classes"])), 2);
    assert_eq!(code(&drinfeld(&["--preset", "S3", "--cap", "enumerated=2", "hopf-enumerate"])), 2);
}

#[test]
fn version_names_schema() {
    let out = drinfeld(&["--version"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("schema 1"));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["hopf-enumerate", "fusion-enumerate", "correspond", "chartable"] {
        let a = drinfeld(&["--preset", "D8", "--json", cmd]);
        let b = drinfeld(&["--preset", "D8", "--json", cmd]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn permutation_input_matches_preset() {
    let f = group_file(r#"{"permutations": [[1, 2, 0], [1, 0, 2]]}"#);
    let from_file = json(&["--group-file", f.path().to_str().unwrap(), "--json", "chartable"]);
    let preset = json(&["--preset", "S3", "--json", "chartable"]);
    assert_eq!(from_file["irreducibles"], preset["irreducibles"]);
    assert_eq!(from_file["classes"], preset["classes"]);
}

#[test]
fn json_schemas() {
    let t = json(&["--preset", "C3", "--json", "chartable"]);
    assert_eq!(t["exponent"], 3);
    assert!(t["irreducibles"][1]["values"][1]["coeffs"].is_array());

    let data = json(&["--preset", "S3", "--json", "hopf-enumerate", "--brute-force"]);
    for d in data.as_array().unwrap() {
        for key in ["N", "M", "X", "psi", "dimension", "normal"] {
            assert!(d.get(key).is_some(), "missing {key}");
        }
        assert_eq!(d["normal"], d["normal_bruteforce"]);
    }

    let fusion = json(&["--preset", "S3", "--json", "fusion-enumerate"]);
    assert_eq!(fusion.as_array().unwrap().len(), 8);
    for f in fusion.as_array().unwrap() {
        for key in ["K", "H", "B", "normal", "objects"] {
            assert!(f.get(key).is_some(), "missing {key}");
        }
    }
    let normal = json(&["--preset", "S3", "--json", "fusion-enumerate", "--normal"]);
    assert_eq!(normal.as_array().unwrap().len(), 6);

    let basis = json(&["--preset", "S3", "--json", "center-basis"]);
    assert_eq!(basis["count"], 6);
}

#[test]
fn seeded_sample_checks_subset() {
    let out = drinfeld(&["--preset", "S4", "hopf-enumerate", "--brute-force", "--seed", "11"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("confirmed against the integral"));
}
