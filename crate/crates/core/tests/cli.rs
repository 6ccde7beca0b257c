use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn cssg() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cssg"));
    c.env_remove("CSSG_EXACT_BUDGET");
    c
}

fn desk(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/desk").join(rel)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compare_identical_files() {
    let f = desk("p05_prime_check/correct_1.py");
    let o = cssg().arg("compare").arg(&f).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("bleu 1.000000"));
    assert_eq!(lines[1], "jaccard 1.000000");
    assert_eq!(lines[2], "tsed 1.000000");
    assert!(lines[3].starts_with("cssg 1.000000 ged=0 dmax="), "{}", lines[3]);
    assert!(lines[3].ends_with("solver=exact"));
}

#[test]
fn budget_env_switches_solver() {
    let a = desk("p05_prime_check/correct_1.py");
    let b = desk("p05_prime_check/correct_2.py");
    let o = cssg()
        .env("CSSG_EXACT_BUDGET", "2")
        .args(["compare", "--metric", "cssg"])
        .arg(&a)
        .arg(&b)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("solver=approx"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(cssg().output().unwrap().status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("code.txt");
    std::fs::write(&f, "x = 1\n").unwrap();
    let o = cssg().arg("compare").arg(&f).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--lang"));
    let o = cssg().args(["compare", "--lang", "python"]).arg(&f).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn format_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.py");
    std::fs::write(&bad, [0x66u8, 0xff, 0xfe, 0x0a]).unwrap();
    assert_eq!(cssg().arg("graph").arg(&bad).output().unwrap().status.code(), Some(2));
    let json = dir.path().join("g.json");
    std::fs::write(&json, "{\"nodes\": 3}").unwrap();
    assert_eq!(cssg().arg("validate").arg(&json).output().unwrap().status.code(), Some(2));
}

#[test]
fn missing_file_exits_3() {
    let o = cssg().args(["graph", "/nonexistent/x.py"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn graph_output_validates() {
    let f = desk("p26_grid_paths/correct_2.java");
    let g = cssg().arg("graph").arg(&f).output().unwrap();
    assert_eq!(g.status.code(), Some(0));
    let mut child = cssg()
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&g.stdout).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    let nodes = parsed["nodes"].as_array().unwrap().len();
    let edges = parsed["edges"].as_array().unwrap().len();
    assert_eq!(stdout(&o).trim(), format!("valid nodes={nodes} edges={edges}"));

    let dot = cssg().args(["graph", "--format", "dot"]).arg(&f).output().unwrap();
    assert!(stdout(&dot).starts_with("digraph"));
}

fn write_corpus(path: &Path, verdicts: &[&str]) {
    let mut f = std::fs::File::create(path).unwrap();
    for p in 0..2 {
        for (i, v) in verdicts.iter().enumerate() {
            let line = serde_json::json!({
                "problem_id": format!("q{p}"),
                "language": "python",
                "verdict": v,
                "source": format!("n = int(input())\nprint(n + {i} * {p})\n"),
                "submission_id": format!("q{p}-{i}"),
            });
            writeln!(f, "{line}").unwrap();
        }
    }
}

#[test]
fn eval_without_incorrect_exits_4_with_reports() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    write_corpus(&corpus, &["correct", "correct", "correct"]);
    let out = dir.path().join("out");
    let o = cssg().args(["eval", "--corpus"]).arg(&corpus).arg("--out").arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(out.join("effect_sizes.csv")).unwrap();
    assert_eq!(table, "language_pair,BLEU,Jaccard,TSED,CSSG\n");
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["triplets"], 0);
    assert_eq!(manifest["skipped_problems"].as_array().unwrap().len(), 2);
}

#[test]
fn missing_corpus_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = cssg()
        .args(["eval", "--corpus", "/nonexistent/c.jsonl", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn report_reproduces_eval_tables() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.jsonl");
    write_corpus(&corpus, &["correct", "correct", "incorrect", "correct"]);
    let out = dir.path().join("eval");
    let o = cssg()
        .args(["eval", "--seed", "4", "--per-problem", "2", "--corpus"])
        .arg(&corpus)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let again = dir.path().join("report");
    let r = cssg()
        .arg("report")
        .arg("--scores")
        .arg(out.join("scores.csv"))
        .arg("--out")
        .arg(&again)
        .output()
        .unwrap();
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(r.stdout, o.stdout);
    for name in ["effect_sizes.csv", "effect_sizes_detail.csv", "correlation.csv", "scores.csv"] {
        assert_eq!(std::fs::read(out.join(name)).unwrap(), std::fs::read(again.join(name)).unwrap(), "{name}");
    }
    assert!(!again.join("manifest.json").exists());
}
