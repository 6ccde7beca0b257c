use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::corpus::{Submission, Triplet};
use crate::error::Result;
use crate::ged::Solver;
use crate::metrics::{Artifacts, Metric, MetricOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairRole {
    Pos,
    Neg,
}

impl PairRole {
    pub fn as_str(self) -> &'static str {
        match self {
            PairRole::Pos => "pos",
            PairRole::Neg => "neg",
        }
    }
}

impl std::str::FromStr for PairRole {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pos" => Ok(PairRole::Pos),
            "neg" => Ok(PairRole::Neg),
            other => Err(format!("unknown pair role `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CssgDetail {
    pub ged: usize,
    pub d_max: usize,
    pub solver: Solver,
}

/// One scored pair. `scores` is aligned with [`ScoreTable::metrics`];
/// `None` marks a failed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub triplet_id: usize,
    pub problem_id: String,
    pub language_pair: String,
    pub role: PairRole,
    pub scores: Vec<Option<f64>>,
    pub cssg: Option<CssgDetail>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreTable {
    pub metrics: Vec<Metric>,
    pub rows: Vec<ScoreRow>,
}

impl ScoreTable {
    pub fn column(&self, metric: Metric) -> Option<usize> {
        self.metrics.iter().position(|&m| m == metric)
    }

    pub fn failures(&self, metric: Metric) -> usize {
        self.column(metric)
            .map_or(0, |c| self.rows.iter().filter(|r| r.scores[c].is_none()).count())
    }

    pub fn triplet_count(&self) -> usize {
        self.rows.len() / 2
    }

    /// Distinct language pairs in first-appearance order.
    pub fn language_pairs(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.language_pair) {
                out.push(r.language_pair.clone());
            }
        }
        out
    }
}

/// Canonical column order with duplicates removed.
pub fn normalize_metrics(metrics: &[Metric]) -> Vec<Metric> {
    Metric::ALL.into_iter().filter(|m| metrics.contains(m)).collect()
}

/// Scores the positive pair `(pos1, pos2)` and negative pair `(pos1, neg)` of
/// every triplet, `pos1` acting as the reference. Rows come back ordered by
/// triplet id then role regardless of scheduling.
pub fn score_all(
    triplets: &[Triplet],
    metrics: &[Metric],
    opts: &MetricOptions,
    jobs: Option<usize>,
) -> Result<ScoreTable> {
    let metrics = normalize_metrics(metrics);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;

    let mut unique: Vec<&Submission> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for t in triplets {
        for s in [&t.pos1, &t.pos2, &t.neg] {
            if seen.insert(s.submission_id.as_str()) {
                unique.push(s);
            }
        }
    }

    let mut rows = pool.install(|| {
        let cache: HashMap<&str, Option<Artifacts>> = unique
            .par_iter()
            .map(|s| (s.submission_id.as_str(), Artifacts::build(&s.unit()).ok()))
            .collect();
        let jobs: Vec<(&Triplet, PairRole)> = triplets
            .iter()
            .flat_map(|t| [(t, PairRole::Pos), (t, PairRole::Neg)])
            .collect();
        jobs.par_iter()
            .map(|&(t, role)| {
                let other = match role {
                    PairRole::Pos => &t.pos2,
                    PairRole::Neg => &t.neg,
                };
                let reference = cache[t.pos1.submission_id.as_str()].as_ref();
                let candidate = cache[other.submission_id.as_str()].as_ref();
                score_pair(t, role, reference, candidate, &metrics, opts)
            })
            .collect::<Vec<_>>()
    });
    rows.sort_by_key(|r| (r.triplet_id, r.role));
    Ok(ScoreTable { metrics, rows })
}

fn score_pair(
    t: &Triplet,
    role: PairRole,
    reference: Option<&Artifacts>,
    candidate: Option<&Artifacts>,
    metrics: &[Metric],
    opts: &MetricOptions,
) -> ScoreRow {
    let mut row = ScoreRow {
        triplet_id: t.id,
        problem_id: t.problem_id().to_string(),
        language_pair: t.language_pair(),
        role,
        scores: vec![None; metrics.len()],
        cssg: None,
    };
    let (Some(a), Some(b)) = (reference, candidate) else {
        return row;
    };
    for (slot, &m) in row.scores.iter_mut().zip(metrics) {
        if let Ok(r) = a.score(b, m, opts) {
            *slot = Some(r.score);
            if let (Some(ged), Some(d_max), Some(solver)) = (r.ged, r.d_max, r.solver) {
                row.cssg = Some(CssgDetail { ged, d_max, solver });
            }
        }
    }
    row
}
