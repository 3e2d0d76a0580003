//! End-to-end tests of the `antipodal` binary: exit codes, file round-trips,
//! and report contents.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_antipodal"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("antipodal-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn generate_then_reload_is_byte_identical() {
    let dir = scratch("gen");
    let out = dir.join("e8.points");
    let status = bin()
        .args(["generate", "E", "8", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    let set = antipodal_cli::formats::read_pointset(&text).unwrap();
    assert_eq!(set.len(), 240);
    assert_eq!(antipodal_cli::formats::write_pointset(&set), text);
}

#[test]
fn half_verify_roundtrip_reproduces_sum() {
    let dir = scratch("half");
    let sel = dir.join("e8half.sel");
    let report = dir.join("half.json");
    let status = bin()
        .args(["half", "E", "8", "--method", "construct", "--out"])
        .arg(&sel)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["values"]["sum_is_zero"], serde_json::json!(true));
    assert_eq!(rep["values"]["selected"], serde_json::json!(120));

    // verify reads the selection back and reproduces the construct-time sum.
    let vreport = dir.join("verify.json");
    let status = bin()
        .arg("verify")
        .arg(&sel)
        .args(["--indices", "1,2,3,4,6", "--report"])
        .arg(&vreport)
        .status()
        .unwrap();
    assert!(status.success());
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&vreport).unwrap()).unwrap();
    assert_eq!(rep["values"]["sum_is_zero"], serde_json::json!(true));
    let moments = rep["values"]["moments"].as_array().unwrap();
    let by_index: std::collections::HashMap<u64, bool> = moments
        .iter()
        .map(|m| (m["index"].as_u64().unwrap(), m["zero"].as_bool().unwrap()))
        .collect();
    assert!(by_index[&1]);
    assert!(by_index[&2]);
    assert!(!by_index[&3]);
    assert!(by_index[&4]);
    assert!(by_index[&6]);
}

#[test]
fn obstruction_exit_codes() {
    let dir = scratch("obstruct");
    // E7: proven obstruction, exit 2 with a certificate in the report.
    let report = dir.join("e7.json");
    let status = bin()
        .args(["half", "E", "7", "--method", "construct", "--out"])
        .arg(dir.join("e7.sel"))
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["status"], "obstruction");
    assert_eq!(rep["values"]["reverified"], serde_json::json!(true));

    // A3 brute force: exhausted, exit 3.
    let status = bin()
        .args(["half", "A", "3", "--method", "brute-force", "--out"])
        .arg(dir.join("a3.sel"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // E8 brute force: beyond the pair cap, exit 4.
    let status = bin()
        .args(["half", "E", "8", "--method", "brute-force", "--out"])
        .arg(dir.join("e8.sel"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));

    // Unknown target, exit 1.
    let status = bin()
        .args(["generate", "F", "4", "--out"])
        .arg(dir.join("f4.points"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn search_index_on_e8_reports_nonexistence() {
    let dir = scratch("search");
    let sel = dir.join("e8half.sel");
    assert!(bin()
        .args(["half", "E", "8", "--method", "construct", "--out"])
        .arg(&sel)
        .status()
        .unwrap()
        .success());
    let report = dir.join("si.json");
    let status = bin()
        .arg("search-index")
        .arg(&sel)
        .args(["--index", "3", "--report"])
        .arg(&report)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3), "none is reported via exit 3");
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["values"]["rank"], serde_json::json!(112));
    assert_eq!(rep["values"]["kernel_dim"], serde_json::json!(8));
    assert_eq!(rep["values"]["enumerated"], serde_json::json!(128));
}

#[test]
fn local_search_half_command() {
    let dir = scratch("local");
    let sel = dir.join("d8.sel");
    let report = dir.join("d8.json");
    let status = bin()
        .args([
            "half", "D", "8", "--method", "local-search", "--seed", "1", "--out",
        ])
        .arg(&sel)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["values"]["sum_is_zero"], serde_json::json!(true));
    assert_eq!(rep["seed"], serde_json::json!(1));
}

#[test]
fn scheme_command_emits_witness_and_csv() {
    let dir = scratch("scheme");
    let csv = dir.join("e8.csv");
    let report = dir.join("scheme.json");
    let status = bin()
        .args(["scheme", "E", "8", "--mode", "full", "--csv"])
        .arg(&csv)
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    let rep: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let witnesses = rep["values"]["witnesses"].as_array().unwrap();
    assert!(witnesses
        .iter()
        .any(|w| w["i"] == 1 && w["j"] == 3 && w["k"] == 1 && w["p_tilde"] == 1));
    let csv_text = fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("i,j,k,p,well_defined\n"));
    // 5 classes -> 125 triples plus header.
    assert_eq!(csv_text.lines().count(), 126);
}

#[test]
fn tight7_generate_and_verify() {
    let dir = scratch("tight7");
    let out = dir.join("tight7.points");
    let status = bin()
        .args(["generate", "tight7", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let set = antipodal_cli::formats::read_pointset(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(set.len(), 4600);
    assert_eq!(set.dim(), 23);

    // Full tight7 is a 7-design: verify straight off the file.
    let status = bin()
        .arg("verify")
        .arg(&out)
        .args(["--indices", "1..7"])
        .output()
        .unwrap();
    assert!(status.status.success());
    let text = String::from_utf8_lossy(&status.stdout);
    assert_eq!(text.matches("-> zero").count(), 7, "output: {text}");
}

#[test]
fn generate_leech_file() {
    let dir = scratch("leech");
    let out = dir.join("leech.points");
    let output = bin()
        .args(["generate", "leech", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("196560 points"), "stdout: {stdout}");
    assert!(stdout.contains("norm2 32/1"), "stdout: {stdout}");
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5 + 196_560);
    assert!(text.starts_with("pointset v1\ndim 24\nnorm2 32/1\nfield rat\ncount 196560\n"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = scratch("threads");
    let sel = dir.join("e8half.sel");
    assert!(bin()
        .args(["half", "E", "8", "--method", "construct", "--out"])
        .arg(&sel)
        .status()
        .unwrap()
        .success());
    let mut reports = Vec::new();
    for threads in ["1", "2"] {
        let report = dir.join(format!("v{threads}.json"));
        assert!(bin()
            .arg("verify")
            .arg(&sel)
            .args(["--indices", "1..6", "--threads", threads, "--report"])
            .arg(&report)
            .status()
            .unwrap()
            .success());
        let rep: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        reports.push(rep["values"].clone());
    }
    assert_eq!(reports[0], reports[1]);
}
