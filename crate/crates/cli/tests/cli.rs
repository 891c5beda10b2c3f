use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/explorerbot")
}

fn model_files(dir: &Path) -> Vec<PathBuf> {
    let mut files = Vec::new();
    for sub in ["arc", "types"] {
        for e in std::fs::read_dir(dir.join(sub)).unwrap() {
            files.push(e.unwrap().path());
        }
    }
    files.sort();
    files
}

fn arcc(args: &[&str], model: &[PathBuf]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcc"))
        .args(args)
        .args(model)
        .output()
        .unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

#[test]
fn check_passes_on_the_corpus() {
    let out = arcc(&["check", "--root", "ExplorerBot"], &model_files(&corpus()));
    assert!(out.status.success(), "{}", text(&out.stderr));
}

#[test]
fn base_profile_rejects_the_schedule() {
    let out = arcc(
        &["check", "--root", "ExplorerBot", "--profile", "base"],
        &model_files(&corpus()),
    );
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains("ExplorationControl.arc:") && err.contains("[P003]"), "{err}");
}

#[test]
fn bind_reports_the_platform() {
    let bind = corpus().join("lejos.bind");
    let out = arcc(
        &["bind", "--root", "ExplorerBot", "--binding", bind.to_str().unwrap()],
        &model_files(&corpus()),
    );
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(text(&out.stdout).contains("bound to platform textgen"));
}

#[test]
fn generate_then_simulate_reproduces_the_expected_trace() {
    let dir = tempfile::tempdir().unwrap();
    let gen_dir = dir.path().join("gen");
    let c = corpus();
    let out = arcc(
        &[
            "generate",
            "--root",
            "ExplorerBot",
            "--binding",
            c.join("sim.bind").to_str().unwrap(),
            "--generators",
            c.join("gens").to_str().unwrap(),
            "-o",
            gen_dir.to_str().unwrap(),
        ],
        &model_files(&c),
    );
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert!(text(&out.stdout).lines().any(|l| l.ends_with("manifest.json")));

    let trace = dir.path().join("trace.csv");
    let out = arcc(
        &[
            "simulate",
            gen_dir.join("manifest.json").to_str().unwrap(),
            "--ticks",
            "30",
            "--trace",
            trace.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success(), "{}", text(&out.stderr));
    assert_eq!(
        std::fs::read(&trace).unwrap(),
        std::fs::read(c.join("expected/trace.csv")).unwrap()
    );
}

#[test]
fn failing_generation_exits_1_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus();
    let out_dir = dir.path().join("gen");
    let out = arcc(
        &[
            "generate",
            "--root",
            "ExplorerBot",
            "--binding",
            c.join("sim.bind").to_str().unwrap(),
            "--generators",
            c.join("gens").to_str().unwrap(),
            "--platform",
            "textgen",
            "-o",
            out_dir.to_str().unwrap(),
        ],
        &model_files(&c),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("[M001]"), "{}", text(&out.stderr));
    assert!(!out_dir.exists());
}

#[test]
fn simulate_without_arguments_prints_usage() {
    let out = arcc(&["simulate"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("Usage"));
}

#[test]
fn missing_manifest_exits_1() {
    let out = arcc(&["simulate", "/nonexistent/manifest.json", "--ticks", "3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("manifest.json"));
}

#[test]
fn generators_list_prints_a_table() {
    let out = arcc(
        &["generators", "list", "--generators", corpus().join("gens").to_str().unwrap()],
        &[],
    );
    assert!(out.status.success(), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[0].starts_with("NAME"));
    let auto = lines
        .iter()
        .find(|l| l.starts_with("InterpAutomatonGen"))
        .unwrap();
    let cells: Vec<&str> = auto.split_whitespace().collect();
    assert_eq!(
        cells,
        ["InterpAutomatonGen", "behavior", "-", "automaton", "interp-rts-1", "DeterministicAutomaton"]
    );
}
