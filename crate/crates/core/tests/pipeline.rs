use std::path::{Path, PathBuf};

use cssg::eval::{self, ingest, EvalConfig, Setting, Verdict};
use cssg::frontend::{Language, SourceUnit};
use cssg::metrics::Metric;
use cssg::pdg::EdgeKind;
use cssg::semgraph::{build_semantic_graph, deserialize, serialize, GraphFormat, ROOT};

fn data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn sources() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for dir in std::fs::read_dir(data().join("desk")).unwrap() {
        for f in std::fs::read_dir(dir.unwrap().path()).unwrap() {
            out.push(f.unwrap().path());
        }
    }
    out.sort();
    out
}

#[test]
fn every_corpus_file_builds_a_valid_graph() {
    let files = sources();
    assert_eq!(files.len(), 180);
    for f in files {
        let lang = Language::from_extension(f.extension().unwrap().to_str().unwrap()).unwrap();
        let unit = SourceUnit::new(lang, std::fs::read_to_string(&f).unwrap(), f.display().to_string());
        let g = build_semantic_graph(&unit).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        g.validate().unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        assert!(g.entries().count() >= 1, "{}", f.display());
        assert!(g.edges.iter().any(|e| e.kind == EdgeKind::Root && e.src == ROOT));

        let json = serialize(&g, GraphFormat::Json);
        let back = deserialize(&json).unwrap();
        assert_eq!(serialize(&back, GraphFormat::Json), json, "{}", f.display());
    }
}

#[test]
fn desk_corpus_ingests_completely() {
    let corpus = ingest(&data().join("desk.jsonl")).unwrap();
    assert_eq!(corpus.submissions.len(), 180);
    assert!(corpus.skipped_lines.is_empty());
    for lang in [Language::Python, Language::Java] {
        let of_lang = corpus.submissions.iter().filter(|s| s.language == lang);
        let incorrect = of_lang.clone().filter(|s| s.verdict == Verdict::Incorrect).count();
        assert_eq!((of_lang.count(), incorrect), (90, 30));
    }
}

#[test]
fn crosslingual_eval_covers_both_directions() {
    let mut cfg = EvalConfig::new(data().join("desk.jsonl"));
    cfg.setting = Setting::Crosslingual;
    cfg.target_langs = vec![Language::Python, Language::Java];
    cfg.source_langs = vec![Language::Python, Language::Java];
    cfg.metrics = vec![Metric::Bleu, Metric::Jaccard, Metric::Tsed];
    let run = eval::run_eval(&cfg).unwrap();
    assert_eq!(run.manifest.triplets, 60);
    let labels: Vec<&str> = run.effects.iter().map(|r| r.language_pair.as_str()).collect();
    assert_eq!(labels, ["(Python, Java)", "(Java, Python)"]);
    assert!(run.table.rows.iter().all(|r| r.scores.iter().all(|s| s.is_some())));
    assert!(run.table.column(Metric::Cssg).is_none());
}
