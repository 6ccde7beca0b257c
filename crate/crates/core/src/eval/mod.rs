//! Triplet-based evaluation: corpus ingestion, pair scoring, effect sizes
//! and inter-metric correlation.

pub mod corpus;
pub mod report;
pub mod score;
pub mod stats;

use std::path::PathBuf;

use serde::Serialize;

pub use corpus::{
    build_triplets, ingest, language_pair_label, parse_corpus, Corpus, Setting, Submission, Triplet, TripletPlan,
    Verdict,
};
pub use report::{
    correlation, effect_sizes, read_scores, render, CorrelationLevel, CorrelationMatrix, EffectCell, EffectRow,
    ReportFiles,
};
pub use score::{score_all, CssgDetail, PairRole, ScoreRow, ScoreTable};
pub use stats::{cohens_d, pearson, pearson_matrix, spearman, EffectSize};

use crate::error::Result;
use crate::frontend::Language;
use crate::ged::Solver;
use crate::metrics::{Metric, MetricOptions};

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub corpus: PathBuf,
    pub setting: Setting,
    pub target_langs: Vec<Language>,
    /// Ignored for monolingual runs.
    pub source_langs: Vec<Language>,
    pub seed: u64,
    pub per_problem: usize,
    pub metrics: Vec<Metric>,
    pub options: MetricOptions,
    pub jobs: Option<usize>,
    pub correlation: CorrelationLevel,
}

impl EvalConfig {
    pub fn new(corpus: impl Into<PathBuf>) -> Self {
        EvalConfig {
            corpus: corpus.into(),
            setting: Setting::Monolingual,
            target_langs: vec![Language::Python],
            source_langs: Vec::new(),
            seed: 0,
            per_problem: 1,
            metrics: Metric::ALL.to_vec(),
            options: MetricOptions::default(),
            jobs: None,
            correlation: CorrelationLevel::Score,
        }
    }

    /// `(target, source)` pairs in report row order.
    pub fn language_pairs(&self) -> Vec<(Language, Language)> {
        match self.setting {
            Setting::Monolingual => dedup(&self.target_langs).into_iter().map(|t| (t, t)).collect(),
            Setting::Crosslingual => {
                let sources = dedup(&self.source_langs);
                dedup(&self.target_langs)
                    .into_iter()
                    .flat_map(|t| sources.iter().filter(move |&&s| s != t).map(move |&s| (t, s)))
                    .collect()
            }
        }
    }
}

fn dedup(langs: &[Language]) -> Vec<Language> {
    let mut out = Vec::new();
    for &l in langs {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedProblem {
    pub language_pair: String,
    pub problem_id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricCounts {
    pub metric: Metric,
    pub failures: usize,
}

/// Run record written next to the reports. Holds no timestamps or host
/// details so reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub corpus: String,
    pub corpus_sha256: String,
    pub setting: Setting,
    pub target_langs: Vec<Language>,
    pub source_langs: Vec<Language>,
    pub language_pairs: Vec<String>,
    pub seed: u64,
    pub per_problem: usize,
    pub metrics: Vec<Metric>,
    pub exact_budget: usize,
    pub expansion_limit: u64,
    pub tsed_name_sensitive: bool,
    pub correlation_level: CorrelationLevel,
    pub jobs: Option<usize>,
    pub submissions: usize,
    pub skipped_lines: Vec<usize>,
    pub triplets: usize,
    pub skipped_problems: Vec<SkippedProblem>,
    pub failures: Vec<MetricCounts>,
    pub cssg_exact_pairs: usize,
    pub cssg_approx_pairs: usize,
}

#[derive(Debug, Clone)]
pub struct EvalRun {
    pub manifest: Manifest,
    pub table: ScoreTable,
    pub effects: Vec<EffectRow>,
    pub correlation: CorrelationMatrix,
}

impl EvalRun {
    pub fn render(&self) -> Result<ReportFiles> {
        render(&self.table, &self.effects, &self.correlation, Some(&self.manifest))
    }
}

/// Triplets for every configured language pair, with sequential ids.
pub fn plan(subs: &[Submission], cfg: &EvalConfig) -> (Vec<Triplet>, Vec<SkippedProblem>) {
    let mut triplets = Vec::new();
    let mut skipped = Vec::new();
    for (t, s) in cfg.language_pairs() {
        let p = build_triplets(subs, cfg.setting, t, s, cfg.seed, cfg.per_problem);
        let label = language_pair_label(t, s);
        skipped.extend(p.skipped.into_iter().map(|(problem_id, reason)| SkippedProblem {
            language_pair: label.clone(),
            problem_id,
            reason,
        }));
        triplets.extend(p.triplets);
    }
    for (i, t) in triplets.iter_mut().enumerate() {
        t.id = i;
    }
    (triplets, skipped)
}

/// Statistics over an already scored table.
pub fn analyze(table: &ScoreTable, pairs: &[String], level: CorrelationLevel) -> (Vec<EffectRow>, CorrelationMatrix) {
    let effects = effect_sizes(table, pairs);
    let matrix = correlation(table, &effects, level);
    (effects, matrix)
}

/// Ingest, sample, score and summarize. An empty triplet yield is not an
/// error here; the run still carries header-only reports.
pub fn run_eval(cfg: &EvalConfig) -> Result<EvalRun> {
    let corpus = ingest(&cfg.corpus)?;
    let (triplets, skipped) = plan(&corpus.submissions, cfg);
    let mut table = score_all(&triplets, &cfg.metrics, &cfg.options, cfg.jobs)?;
    report::quantize(&mut table);
    let pairs: Vec<String> = cfg.language_pairs().into_iter().map(|(t, s)| language_pair_label(t, s)).collect();
    let present: Vec<String> = pairs.iter().filter(|p| table.rows.iter().any(|r| &r.language_pair == *p)).cloned().collect();
    let (effects, correlation) = analyze(&table, &present, cfg.correlation);
    let solver_count = |s: Solver| table.rows.iter().filter(|r| r.cssg.is_some_and(|d| d.solver == s)).count();
    let manifest = Manifest {
        tool: "cssg",
        version: env!("CARGO_PKG_VERSION"),
        corpus: cfg.corpus.display().to_string(),
        corpus_sha256: corpus.sha256.clone(),
        setting: cfg.setting,
        target_langs: dedup(&cfg.target_langs),
        source_langs: match cfg.setting {
            Setting::Monolingual => dedup(&cfg.target_langs),
            Setting::Crosslingual => dedup(&cfg.source_langs),
        },
        language_pairs: pairs,
        seed: cfg.seed,
        per_problem: cfg.per_problem,
        metrics: table.metrics.clone(),
        exact_budget: cfg.options.exact.budget,
        expansion_limit: cfg.options.exact.expansion_limit,
        tsed_name_sensitive: cfg.options.tsed_name_sensitive,
        correlation_level: cfg.correlation,
        jobs: cfg.jobs,
        submissions: corpus.submissions.len(),
        skipped_lines: corpus.skipped_lines.clone(),
        triplets: triplets.len(),
        skipped_problems: skipped,
        failures: table
            .metrics
            .iter()
            .map(|&metric| MetricCounts {
                metric,
                failures: table.failures(metric),
            })
            .collect(),
        cssg_exact_pairs: solver_count(Solver::Exact),
        cssg_approx_pairs: solver_count(Solver::Approx),
    };
    Ok(EvalRun {
        manifest,
        table,
        effects,
        correlation,
    })
}
