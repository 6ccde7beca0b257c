//! Similarity metrics: the graph score plus lexical and syntactic baselines.

mod lexical;
mod tsed;

use serde::Serialize;

pub use lexical::{bleu, jaccard};
pub use tsed::{tree_edit_distance, tsed, tsed_trees};

use crate::error::Result;
use crate::frontend::{tokenize, SourceUnit};
use crate::ged::{ged_approx, ged_exact, EditScript, ExactOptions, Solver};
use crate::semgraph::{build_semantic_graph, SemanticGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Bleu,
    Jaccard,
    Tsed,
    Cssg,
}

impl Metric {
    /// Report column order.
    pub const ALL: [Metric; 4] = [Metric::Bleu, Metric::Jaccard, Metric::Tsed, Metric::Cssg];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Bleu => "bleu",
            Metric::Jaccard => "jaccard",
            Metric::Tsed => "tsed",
            Metric::Cssg => "cssg",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Metric::Bleu => "BLEU",
            Metric::Jaccard => "Jaccard",
            Metric::Tsed => "TSED",
            Metric::Cssg => "CSSG",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bleu" => Ok(Metric::Bleu),
            "jaccard" => Ok(Metric::Jaccard),
            "tsed" => Ok(Metric::Tsed),
            "cssg" => Ok(Metric::Cssg),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityResult {
    pub metric: Metric,
    pub score: f64,
    pub ged: Option<usize>,
    pub d_max: Option<usize>,
    pub solver: Option<Solver>,
    /// Both graphs were root-only.
    pub degenerate: bool,
}

impl SimilarityResult {
    fn plain(metric: Metric, score: f64) -> Self {
        SimilarityResult {
            metric,
            score,
            ged: None,
            d_max: None,
            solver: None,
            degenerate: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MetricOptions {
    pub exact: ExactOptions,
    /// Keep identifier names and literal values in TSED labels.
    pub tsed_name_sensitive: bool,
}

/// Exact when within budget and the search finishes, else the assignment
/// bound.
pub fn edit_distance(g1: &SemanticGraph, g2: &SemanticGraph, opts: &ExactOptions) -> EditScript {
    match ged_exact(g1, g2, opts) {
        Ok(s) => s,
        Err(_) => ged_approx(g1, g2),
    }
}

/// `1 - GED / D_max` with `D_max = |N1| + |E1| + |N2| + |E2|`.
pub fn cssg_graphs(g1: &SemanticGraph, g2: &SemanticGraph, opts: &ExactOptions) -> SimilarityResult {
    let d_max = g1.node_count() + g1.edge_count() + g2.node_count() + g2.edge_count();
    let script = edit_distance(g1, g2, opts);
    SimilarityResult {
        metric: Metric::Cssg,
        score: 1.0 - script.total_cost as f64 / d_max as f64,
        ged: Some(script.total_cost),
        d_max: Some(d_max),
        solver: Some(script.solver),
        degenerate: g1.is_root_only() && g2.is_root_only(),
    }
}

pub fn cssg(a: &SourceUnit, b: &SourceUnit, opts: &ExactOptions) -> Result<SimilarityResult> {
    let g1 = build_semantic_graph(a)?;
    let g2 = build_semantic_graph(b)?;
    Ok(cssg_graphs(&g1, &g2, opts))
}

/// Scores one metric; `a` is the reference for BLEU.
pub fn score(metric: Metric, a: &SourceUnit, b: &SourceUnit, opts: &MetricOptions) -> Result<SimilarityResult> {
    Ok(match metric {
        Metric::Cssg => cssg(a, b, &opts.exact)?,
        Metric::Bleu => SimilarityResult::plain(metric, bleu(&tokenize(a)?, &tokenize(b)?)?),
        Metric::Jaccard => SimilarityResult::plain(metric, jaccard(&tokenize(a)?, &tokenize(b)?)),
        Metric::Tsed => SimilarityResult::plain(metric, tsed(a, b, opts.tsed_name_sensitive)?),
    })
}

/// Precomputed per-unit artifacts so a unit used in many pairs is parsed
/// once.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub tokens: crate::frontend::TokenStream,
    pub ast: crate::frontend::AstNode,
    pub graph: SemanticGraph,
}

impl Artifacts {
    pub fn build(unit: &SourceUnit) -> Result<Self> {
        Ok(Artifacts {
            tokens: tokenize(unit)?,
            ast: crate::frontend::parse(unit)?,
            graph: build_semantic_graph(unit)?,
        })
    }

    pub fn score(&self, other: &Artifacts, metric: Metric, opts: &MetricOptions) -> Result<SimilarityResult> {
        Ok(match metric {
            Metric::Cssg => cssg_graphs(&self.graph, &other.graph, &opts.exact),
            Metric::Bleu => SimilarityResult::plain(metric, bleu(&self.tokens, &other.tokens)?),
            Metric::Jaccard => SimilarityResult::plain(metric, jaccard(&self.tokens, &other.tokens)),
            Metric::Tsed => SimilarityResult::plain(metric, tsed_trees(&self.ast, &other.ast, opts.tsed_name_sensitive)),
        })
    }
}
