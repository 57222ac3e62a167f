//! End-to-end checks of the command-line surface: flags, exit codes, file
//! outputs, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_motifcut")
}

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("motifcut-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

#[test]
fn preprocess_reports_core_statistics() {
    let dir = scratch("pre");
    let out = dir.join("core.txt");
    let input = fixture("cycle_blocks_6.txt");
    let r = run(&[
        "preprocess",
        "--input",
        &input,
        "--tensor",
        "d3c",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert_eq!(String::from_utf8_lossy(&r.stdout).trim(), "3 6 2");
    let core = std::fs::read_to_string(&out).unwrap();
    assert_eq!(core.lines().count(), 6);
    let map = std::fs::read_to_string(dir.join("core.txt.map")).unwrap();
    assert_eq!(map, "0 0\n1 1\n2 2\n");

    // Repeat run is byte-identical.
    let r2 = run(&[
        "preprocess",
        "--input",
        &input,
        "--tensor",
        "d3c",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.stdout, r2.stdout);
    assert_eq!(core, std::fs::read_to_string(&out).unwrap());
}

#[test]
fn preprocess_rejects_motif_free_graphs() {
    let dir = scratch("empty");
    let input = dir.join("path.txt");
    std::fs::write(&input, "0 1\n1 2\n2 3\n").unwrap();
    let r = run(&[
        "preprocess",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.join("core.txt").to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("empty core"));
}

#[test]
fn sweep_is_deterministic_under_a_seed() {
    let dir = scratch("sweep");
    let input = fixture("layered_12.txt");
    let out = dir.join("profile.csv");
    let args = [
        "sweep",
        "--input",
        &input,
        "--method",
        "random",
        "--tensor",
        "layered",
        "--kmin",
        "1",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
    ];
    let r = run(&args);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let first = std::fs::read(&out).unwrap();
    run(&args);
    assert_eq!(first, std::fs::read(&out).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("# method=random tensor=layered"));
    assert_eq!(text.lines().count(), 2 + 11); // comment, header, k in 1..=11
}

#[test]
fn sweep_fixture_has_zero_cut_row() {
    let dir = scratch("sweep6");
    let input = fixture("cycle_blocks_6.txt");
    let out = dir.join("p.csv");
    let r = run(&[
        "sweep",
        "--input",
        &input,
        "--kmin",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let row = text
        .lines()
        .find(|l| l.starts_with("3,"))
        .expect("row for prefix size 3");
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(cols[9], "0", "phi3 of the 3-prefix: {row}");
}

#[test]
fn sweep_co_marks_the_winning_vector() {
    let dir = scratch("co");
    let input = fixture("cycle_blocks_6.txt");
    let out = dir.join("co.csv");
    let r = run(&[
        "sweep",
        "--input",
        &input,
        "--method",
        "co",
        "--kmin",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# method=co-left") || text.contains("# method=co-right"));
    let data_line = text.lines().nth(2).unwrap();
    assert!(data_line.ends_with(",left") || data_line.ends_with(",right"));
}

#[test]
fn sweep_multiple_methods_fan_out() {
    let dir = scratch("multi");
    let input = fixture("layered_12.txt");
    let out = dir.join("prof.csv");
    let r = run(&[
        "sweep",
        "--input",
        &input,
        "--method",
        "tsc,ul,random",
        "--tensor",
        "layered",
        "--kmin",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    for m in ["tsc", "ul", "random"] {
        assert!(
            dir.join(format!("prof.{m}.csv")).exists(),
            "missing {m} profile"
        );
    }
}

#[test]
fn sweep_json_mirror() {
    let dir = scratch("json");
    let input = fixture("cycle_blocks_6.txt");
    let out = dir.join("p.json");
    let r = run(&["sweep", "--input", &input, "--kmin", "1", "--out", out.to_str().unwrap()]);
    assert!(r.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"method\": \"tsc\""));
    assert!(text.contains("\"rows\": ["));
    assert!(text.trim_start().starts_with('{') && text.trim_end().ends_with('}'));
}

#[test]
fn cluster_recovers_layers_and_writes_both_formats() {
    let dir = scratch("cluster");
    let input = fixture("layered_12.txt");
    let out = dir.join("part.json");
    let r = run(&[
        "cluster",
        "--input",
        &input,
        "--tensor",
        "layered",
        "--clusters",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let json = std::fs::read_to_string(&out).unwrap();
    assert!(json.contains("[0, 1, 2, 3]"));
    assert!(json.contains("[4, 5, 6, 7]"));
    assert!(json.contains("[8, 9, 10, 11]"));
    let tsv = std::fs::read_to_string(dir.join("part.tsv")).unwrap();
    assert_eq!(tsv.lines().count(), 12);
    for line in tsv.lines() {
        let mut it = line.split('\t');
        let label: u64 = it.next().unwrap().parse().unwrap();
        let cid: u32 = it.next().unwrap().parse().unwrap();
        assert_eq!(cid, (label / 4) as u32);
    }
}

#[test]
fn verify_passes_on_fixture_and_refuses_large_caps() {
    let input = fixture("anomaly_22.txt");
    let r = run(&["verify", "--input", &input]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert!(String::from_utf8_lossy(&r.stdout).contains("all checks passed"));

    let r = run(&["verify", "--input", &input, "--max-n", "10"]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn usage_and_data_errors_have_distinct_exit_codes() {
    let r = run(&["frobnicate"]);
    assert_eq!(r.status.code(), Some(1));
    let r = run(&["sweep", "--input", &fixture("cycle_blocks_6.txt")]);
    assert_eq!(r.status.code(), Some(1), "missing --out is a usage error");
    let r = run(&["verify", "--input", "/nonexistent/graph.txt"]);
    assert_eq!(r.status.code(), Some(2));
    let r = run(&[
        "sweep",
        "--input",
        &fixture("cycle_blocks_6.txt"),
        "--tensor",
        "pentagon",
        "--out",
        "/tmp/x.csv",
    ]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn data_directory_environment_fallback() {
    let dir = scratch("envdata");
    let out = dir.join("core.txt");
    let fixtures_dir = PathBuf::from(format!("{}/../core/fixtures", env!("CARGO_MANIFEST_DIR")));
    let r = run_env(
        &[
            "preprocess",
            "--input",
            "cycle_blocks_6.txt",
            "--out",
            out.to_str().unwrap(),
        ],
        "MOTIFCUT_DATA",
        &fixtures_dir,
    );
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    assert_eq!(String::from_utf8_lossy(&r.stdout).trim(), "3 6 2");
}
