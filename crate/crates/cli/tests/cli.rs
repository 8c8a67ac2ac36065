//! End-to-end tests against the built binary: exit codes, output formats,
//! and the byte-identical determinism contract.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kneser-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn verify_ekr_passes() {
    let out = run(&["verify", "ekr", "--n", "5", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(text.contains("all stars"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = run(&["verify", "frobnicate", "--n", "5", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_suites_pass_at_small_scale() {
    for suite in [
        "ekr",
        "hilton-milner",
        "matching",
        "setpairs",
        "supersat",
        "shadow",
        "container",
    ] {
        let out = run(&[
            "verify", suite, "--n", "5", "--r", "2", "--trials", "50", "--seed", "1",
        ]);
        assert_eq!(out.status.code(), Some(0), "suite {suite}: {out:?}");
    }
}

#[test]
fn scan_grid_has_expected_rows_and_endpoints() {
    let out = run(&[
        "scan", "--n", "7", "--r", "3", "--p-grid", "0:1:0.05", "--trials", "20", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 22); // header + 21 points
    assert!(lines[0].starts_with("p,trials,successes,phat"));
    assert!(lines[1].starts_with("0,20,0,0,"));
    assert!(lines[21].starts_with("1,20,20,1,"));
}

#[test]
fn scan_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    let path_c = dir.path().join("c.csv");
    let base = [
        "scan",
        "--n",
        "7",
        "--r",
        "3",
        "--p-grid",
        "0,0.5,0.9,1",
        "--trials",
        "100",
        "--seed",
        "42",
    ];
    let run_to = |path: &Path, threads: Option<&str>| {
        let mut cmd = bin();
        cmd.args(base).arg("--out").arg(path);
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        let out = cmd.output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{out:?}");
    };
    run_to(&path_a, Some("1"));
    run_to(&path_b, Some("1"));
    run_to(&path_c, Some("8"));
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    let c = std::fs::read(&path_c).unwrap();
    assert_eq!(a, b, "rerun changed bytes");
    assert_eq!(a, c, "thread count changed bytes");

    // env fallback matches the flag
    let path_d = dir.path().join("d.csv");
    let out = bin()
        .args(base)
        .arg("--out")
        .arg(&path_d)
        .env("KNESER_LAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(a, std::fs::read(&path_d).unwrap());
}

#[test]
fn scan_json_carries_metadata() {
    let out = run(&[
        "scan", "--n", "5", "--r", "2", "--p-grid", "0,1", "--trials", "10", "--seed", "3",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 5);
    assert_eq!(doc["seed"], 3);
    assert!(doc["version"].is_string());
    assert_eq!(doc["points"].as_array().unwrap().len(), 2);
    // runtime never appears in serialized output
    assert!(doc["points"][0].get("mean_runtime_secs").is_none());
}

#[test]
fn container_star_example() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("star1.fam");
    std::fs::write(&fam, "5 2\n1 2\n1 3\n1 4\n1 5\n").unwrap();
    let out = bin()
        .args([
            "container",
            "--graph",
            "kneser",
            "--n",
            "5",
            "--r",
            "2",
            "--a",
            "0",
            "--b",
            "1",
            "--replay",
            "--family",
        ])
        .arg(&fam)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["reconstruction"], "identical");
    assert_eq!(doc["k"], 1);
    let t_bound = doc["bounds"]["fingerprint_size"].as_f64().unwrap();
    assert!((t_bound - 10.0 / 3.0).abs() < 1e-9);
}

#[test]
fn container_density_precondition_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("edge.fam");
    std::fs::write(&fam, "5 2\n1 2\n3 4\n").unwrap();
    let out = bin()
        .args([
            "container",
            "--graph",
            "kneser",
            "--n",
            "5",
            "--r",
            "2",
            "--a",
            "0",
            "--b",
            "1",
            "--family",
        ])
        .arg(&fam)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("mu(U) = 1/10"), "{err}");
}

#[test]
fn container_malformed_family_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("bad.fam");
    std::fs::write(&fam, "5 2\n1 1\n").unwrap();
    let out = bin()
        .args([
            "container",
            "--graph",
            "kneser",
            "--n",
            "5",
            "--r",
            "2",
            "--a",
            "0",
            "--b",
            "1",
            "--family",
        ])
        .arg(&fam)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn container_gnp_greedy_replay() {
    let out = run(&[
        "container",
        "--graph",
        "gnp",
        "--nv",
        "40",
        "--p",
        "0.2",
        "--graph-seed",
        "11",
        "--greedy",
        "--a",
        "0",
        "--b",
        "1/3",
        "--replay",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["reconstruction"], "identical");
}

#[test]
fn shadow_reports_exact_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("two.fam");
    std::fs::write(&fam, "5 3\n1 2 3\n1 2 4\n").unwrap();
    let out = bin()
        .args(["shadow", "--k", "2", "--format", "json", "--family"])
        .arg(&fam)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["exact_shadow_size"], 5);
    assert!(doc["lovasz_bound"].as_f64().unwrap() <= 5.0);
}

#[test]
fn shadow_pipeline_hand_traced() {
    // star at 1 in [7]^(3) minus {1,2,3} plus {4,5,6}
    let mut text = String::from("7 3\n");
    for b in 2..=7u32 {
        for c in (b + 1)..=7 {
            if (b, c) != (2, 3) {
                text.push_str(&format!("1 {b} {c}\n"));
            }
        }
    }
    text.push_str("4 5 6\n");
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("perturbed.fam");
    std::fs::write(&fam, text).unwrap();
    let out = bin()
        .args(["shadow", "--pipeline", "--format", "json", "--family"])
        .arg(&fam)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pipeline_bound"], 2);
    assert_eq!(doc["pipeline_trace"]["ell"], 1);
    assert_eq!(doc["pipeline_trace"]["center"], 1);
}

#[test]
fn bounds_tables_match_closed_forms() {
    let out = run(&[
        "bounds",
        "--n",
        "20",
        "--r",
        "8",
        "--epsilon",
        "0.1",
        "--beta",
        "0.01",
        "--m",
        "0,1000",
        "--k",
        "6",
        "--p",
        "0.5",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["star_size"], "50388");
    let bc = doc["babycont"].as_array().unwrap();
    assert_eq!(bc.len(), 2);
    // m = 0 drops the sqrt term: k1 = c_hat * N / (beta M)
    let k1_m0 = bc[0]["k1"].as_f64().unwrap();
    assert!((k1_m0 - 2000.0 * 50388.0 / 3.3).abs() / k1_m0 < 1e-12);
    assert_eq!(doc["supersat_lb"][0]["edge_lower_bound"], 990.0);
}

#[test]
fn output_files_are_written_atomically_with_content() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("out.csv");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    let out = bin()
        .args([
            "scan", "--n", "5", "--r", "2", "--p-grid", "0,1", "--trials", "5", "--seed", "1",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p,trials"));
    // no stray temp files left behind
    let leftovers: Vec<_> = std::fs::read_dir(path.parent().unwrap())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name() != "out.csv")
        .collect();
    assert!(leftovers.is_empty(), "{leftovers:?}");
}
