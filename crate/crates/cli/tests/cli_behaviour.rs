//! End-to-end behaviour of the binary: determinism, corpus consistency,
//! output files, exit codes.

use std::path::PathBuf;
use std::process::Command;

fn mukai_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mukai"))
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run_ok(args: &[&str]) -> Vec<u8> {
    let output = mukai_bin().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    output.stdout
}

#[test]
fn identical_inputs_produce_byte_identical_reports() {
    let fig1 = corpus_dir().join("fig1.json");
    let a = run_ok(&["analyze-fan", fig1.to_str().unwrap()]);
    let b = run_ok(&["analyze-fan", fig1.to_str().unwrap()]);
    assert_eq!(a, b);

    let conics = corpus_dir().join("conics.json");
    let a = run_ok(&["analyze-spherical", conics.to_str().unwrap()]);
    let b = run_ok(&["analyze-spherical", conics.to_str().unwrap()]);
    assert_eq!(a, b);
}

#[test]
fn committed_corpus_files_match_the_builtin_corpus() {
    let listing = String::from_utf8(run_ok(&["corpus", "list"])).unwrap();
    let names: Vec<&str> = listing
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert!(names.len() >= 6, "corpus must list at least six entries");
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted, "corpus list must be sorted");
    for name in names {
        let shown = run_ok(&["corpus", "show", name]);
        let committed = std::fs::read(corpus_dir().join(format!("{name}.json")))
            .unwrap_or_else(|e| panic!("corpus/{name}.json missing: {e}"));
        assert_eq!(shown, committed, "corpus/{name}.json drifted from the binary");
    }
}

#[test]
fn analyze_fan_reports_equality_case_for_p5() {
    let p5 = corpus_dir().join("p5.json");
    let stdout = run_ok(&["analyze-fan", p5.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(report["equality_case"], serde_json::json!([5]));
    assert_eq!(report["class_rank"], 1);
    assert_eq!(report["pseudo_index"], "6");
}

#[test]
fn analyze_fan_vk4_reports_tau() {
    let vk4 = corpus_dir().join("vk4.json");
    let stdout = run_ok(&["analyze-fan", vk4.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(report["tau_z"], 2);
    assert_eq!(report["tau_q"], "5/2");
    assert_eq!(report["picard_rank"], 6);
    assert_eq!(report["toric"]["nef_extreme_ray_count"], 12);
    assert_eq!(report["toric"]["p_x_size"], 13);
}

#[test]
fn hilbert_basis_command_is_sorted_and_exact() {
    let cone = corpus_dir().join("cone12.json");
    let stdout = run_ok(&["hilbert-basis", cone.to_str().unwrap()]);
    let out: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(
        out["hilbert_basis"],
        serde_json::json!([["1", "0"], ["1", "1"], ["1", "2"]])
    );
}

#[test]
fn every_bundled_fan_satisfies_the_mukai_inequality() {
    // Instance checks across the whole fan corpus: exit 0 and margin >= 0.
    for name in ["fig1", "p1", "p1xp1", "p2", "p2xp2", "p4x4x4", "p5", "vk4"] {
        let path = corpus_dir().join(format!("{name}.json"));
        let stdout = run_ok(&["analyze-fan", path.to_str().unwrap()]);
        let report: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
        let margin = report["margin"].as_str().unwrap();
        assert!(
            !margin.starts_with('-'),
            "{name} reports a negative Mukai margin {margin}"
        );
        assert_eq!(report["flags"]["fano"], true, "{name} should be Fano");
    }
}

#[test]
fn parse_errors_exit_one() {
    let dir = std::env::temp_dir().join("mukai-cli-behaviour");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let output = mukai_bin().arg("analyze-fan").arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(1));

    let missing = dir.join("does-not-exist.json");
    let output = mukai_bin().arg("analyze-fan").arg(&missing).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn validation_errors_name_the_violated_invariant() {
    let dir = std::env::temp_dir().join("mukai-cli-behaviour");
    std::fs::create_dir_all(&dir).unwrap();
    // rank exceeding dim violates the record invariant.
    let bad = dir.join("rank-exceeds-dim.json");
    std::fs::write(
        &bad,
        r#"{"dim": 1, "rank": 2, "divisors": [{"name": "D", "rho": [1, 0], "m": 1, "color": true}], "valuation_cone_generators": [[1, 0]]}"#,
    )
    .unwrap();
    let output = mukai_bin().arg("analyze-spherical").arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("dim"), "message should mention the dim >= rank invariant");

    // Empty divisor table.
    let empty = dir.join("empty-divisors.json");
    std::fs::write(
        &empty,
        r#"{"dim": 2, "rank": 1, "divisors": [], "valuation_cone_generators": [[1]]}"#,
    )
    .unwrap();
    let output = mukai_bin().arg("analyze-spherical").arg(&empty).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn out_dir_env_var_writes_report_files() {
    let dir = std::env::temp_dir().join(format!("mukai-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p2 = corpus_dir().join("p2.json");
    let stdout = mukai_bin()
        .arg("analyze-fan")
        .arg(p2.to_str().unwrap())
        .env("MUKAI_OUT_DIR", &dir)
        .output()
        .expect("binary runs");
    assert!(stdout.status.success());
    let written = std::fs::read(dir.join("p2.report.json")).expect("report file written");
    assert_eq!(written, stdout.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_report_renders_the_witness() {
    let conics = corpus_dir().join("conics.json");
    let stdout = run_ok(&["analyze-spherical", conics.to_str().unwrap(), "--report", "text"]);
    let text = String::from_utf8(stdout).unwrap();
    assert!(text.contains("p_tilde            = 0"));
    assert!(text.contains("witness divisor    = 6*D2"));
    assert!(text.contains("toric_detected=yes"));
}
