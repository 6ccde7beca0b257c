use std::path::Path;

use serde::Serialize;

use super::score::{CssgDetail, PairRole, ScoreRow, ScoreTable};
use super::stats::{cohens_d, pearson_matrix, EffectSize};
use crate::error::{Error, Result};
use crate::metrics::Metric;

pub const EFFECT_SIZES_CSV: &str = "effect_sizes.csv";
pub const EFFECT_DETAIL_CSV: &str = "effect_sizes_detail.csv";
pub const CORRELATION_CSV: &str = "correlation.csv";
pub const SCORES_CSV: &str = "scores.csv";
pub const MANIFEST_JSON: &str = "manifest.json";

const NA: &str = "NA";

/// Fixed six-decimal rendering; negative zero prints as zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| NA.to_string(), fmt6)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectCell {
    pub metric: Metric,
    pub language_pair: String,
    pub n_pos: usize,
    pub n_neg: usize,
    pub failures: usize,
    /// `None` when undefined; `status` says why.
    pub effect: Option<EffectSize>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EffectRow {
    pub language_pair: String,
    pub cells: Vec<EffectCell>,
}

pub fn effect_sizes(table: &ScoreTable, pairs: &[String]) -> Vec<EffectRow> {
    pairs
        .iter()
        .map(|lp| {
            let rows: Vec<&ScoreRow> = table.rows.iter().filter(|r| &r.language_pair == lp).collect();
            let cells = table
                .metrics
                .iter()
                .enumerate()
                .map(|(c, &metric)| {
                    let take = |role: PairRole| -> Vec<f64> {
                        rows.iter().filter(|r| r.role == role).filter_map(|r| r.scores[c]).collect()
                    };
                    let (pos, neg) = (take(PairRole::Pos), take(PairRole::Neg));
                    let failures = rows.len() - pos.len() - neg.len();
                    let (effect, status) = match cohens_d(&pos, &neg) {
                        Ok(e) => (Some(e), "ok".to_string()),
                        Err(Error::InsufficientSample { .. }) => (None, "insufficient_sample".to_string()),
                        Err(Error::DegenerateVariance(_)) => (None, "degenerate_variance".to_string()),
                        Err(e) => (None, e.to_string()),
                    };
                    EffectCell {
                        metric,
                        language_pair: lp.clone(),
                        n_pos: pos.len(),
                        n_neg: neg.len(),
                        failures,
                        effect,
                        status,
                    }
                })
                .collect();
            EffectRow {
                language_pair: lp.clone(),
                cells,
            }
        })
        .collect()
}

/// Mean of the defined `d` values of each metric column.
pub fn average_row(metrics: &[Metric], rows: &[EffectRow]) -> Vec<Option<f64>> {
    (0..metrics.len())
        .map(|c| {
            let ds: Vec<f64> = rows.iter().filter_map(|r| r.cells[c].effect.map(|e| e.cohens_d)).collect();
            (!ds.is_empty()).then(|| ds.iter().sum::<f64>() / ds.len() as f64)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationLevel {
    /// Per-pair similarity scores aligned by (triplet, role).
    Score,
    /// Per-language-pair effect sizes.
    EffectSize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub metrics: Vec<Metric>,
    pub level: CorrelationLevel,
    pub pearson: Vec<Vec<Option<f64>>>,
}

pub fn correlation(table: &ScoreTable, effects: &[EffectRow], level: CorrelationLevel) -> CorrelationMatrix {
    let columns: Vec<Vec<Option<f64>>> = (0..table.metrics.len())
        .map(|c| match level {
            CorrelationLevel::Score => table.rows.iter().map(|r| r.scores[c]).collect(),
            CorrelationLevel::EffectSize => effects.iter().map(|r| r.cells[c].effect.map(|e| e.cohens_d)).collect(),
        })
        .collect();
    CorrelationMatrix {
        metrics: table.metrics.clone(),
        level,
        pearson: pearson_matrix(&columns),
    }
}

fn csv_writer() -> csv::WriterBuilder {
    let mut b = csv::WriterBuilder::new();
    b.terminator(csv::Terminator::Any(b'\n'));
    b
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("in-memory writer cannot fail")
}

/// Table layout: one row per language pair, one column per metric, then an
/// `Average` row. Empty input yields just the header.
pub fn effect_sizes_csv(metrics: &[Metric], rows: &[EffectRow]) -> Result<Vec<u8>> {
    let mut w = csv_writer().from_writer(Vec::new());
    let mut header = vec!["language_pair".to_string()];
    header.extend(metrics.iter().map(|m| m.display_name().to_string()));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.language_pair.clone()];
        rec.extend(r.cells.iter().map(|c| fmt_opt(c.effect.map(|e| e.cohens_d))));
        w.write_record(&rec)?;
    }
    if !rows.is_empty() {
        let mut rec = vec!["Average".to_string()];
        rec.extend(average_row(metrics, rows).into_iter().map(fmt_opt));
        w.write_record(&rec)?;
    }
    Ok(finish(w))
}

pub fn effect_detail_csv(rows: &[EffectRow]) -> Result<Vec<u8>> {
    let mut w = csv_writer().from_writer(Vec::new());
    w.write_record([
        "language_pair",
        "metric",
        "cohens_d",
        "n_pos",
        "n_neg",
        "failures",
        "mean_pos",
        "mean_neg",
        "pooled_sd",
        "status",
    ])?;
    for c in rows.iter().flat_map(|r| &r.cells) {
        let e = c.effect;
        w.write_record([
            c.language_pair.clone(),
            c.metric.display_name().to_string(),
            fmt_opt(e.map(|e| e.cohens_d)),
            c.n_pos.to_string(),
            c.n_neg.to_string(),
            c.failures.to_string(),
            fmt_opt(e.map(|e| e.mean_pos)),
            fmt_opt(e.map(|e| e.mean_neg)),
            fmt_opt(e.map(|e| e.pooled_sd)),
            c.status.clone(),
        ])?;
    }
    Ok(finish(w))
}

pub fn correlation_csv(m: &CorrelationMatrix) -> Result<Vec<u8>> {
    let mut w = csv_writer().from_writer(Vec::new());
    let mut header = vec!["metric".to_string()];
    header.extend(m.metrics.iter().map(|m| m.display_name().to_string()));
    w.write_record(&header)?;
    for (metric, row) in m.metrics.iter().zip(&m.pearson) {
        let mut rec = vec![metric.display_name().to_string()];
        rec.extend(row.iter().map(|&r| fmt_opt(r)));
        w.write_record(&rec)?;
    }
    Ok(finish(w))
}

pub fn scores_csv(table: &ScoreTable) -> Result<Vec<u8>> {
    let mut w = csv_writer().from_writer(Vec::new());
    let with_cssg = table.column(Metric::Cssg).is_some();
    let mut header: Vec<String> = ["triplet_id", "problem_id", "language_pair", "pair"].map(String::from).to_vec();
    header.extend(table.metrics.iter().map(|m| m.as_str().to_string()));
    if with_cssg {
        header.extend(["cssg_ged", "cssg_dmax", "cssg_solver"].map(String::from));
    }
    w.write_record(&header)?;
    for r in &table.rows {
        let mut rec = vec![
            r.triplet_id.to_string(),
            r.problem_id.clone(),
            r.language_pair.clone(),
            r.role.as_str().to_string(),
        ];
        rec.extend(r.scores.iter().map(|&s| fmt_opt(s)));
        if with_cssg {
            match r.cssg {
                Some(d) => rec.extend([d.ged.to_string(), d.d_max.to_string(), d.solver.to_string()]),
                None => rec.extend([NA, NA, NA].map(String::from)),
            }
        }
        w.write_record(&rec)?;
    }
    Ok(finish(w))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidScores(msg.into())
}

fn parse_cell<T: std::str::FromStr>(s: &str) -> Result<Option<T>> {
    if s == NA {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| bad(format!("bad cell `{s}`")))
}

/// Reads a table written by [`scores_csv`].
pub fn read_scores(bytes: &[u8]) -> Result<ScoreTable> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(bytes);
    let header = rdr.headers()?.clone();
    let fixed = ["triplet_id", "problem_id", "language_pair", "pair"];
    if header.len() < 4 || header.iter().take(4).ne(fixed) {
        return Err(bad("unexpected header"));
    }
    let mut metrics = Vec::new();
    for h in header.iter().skip(4) {
        match h.parse::<Metric>() {
            Ok(m) => metrics.push(m),
            Err(_) if h.starts_with("cssg_") => break,
            Err(e) => return Err(bad(e)),
        }
    }
    let with_cssg = metrics.contains(&Metric::Cssg);
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let k = metrics.len();
        let want = 4 + k + if with_cssg { 3 } else { 0 };
        if rec.len() != want {
            return Err(bad(format!("expected {want} fields, got {}", rec.len())));
        }
        let scores = (0..k).map(|i| parse_cell::<f64>(&rec[4 + i])).collect::<Result<Vec<_>>>()?;
        let cssg = if with_cssg {
            match (
                parse_cell::<usize>(&rec[4 + k])?,
                parse_cell::<usize>(&rec[5 + k])?,
                parse_cell::<crate::ged::Solver>(&rec[6 + k])?,
            ) {
                (Some(ged), Some(d_max), Some(solver)) => Some(CssgDetail { ged, d_max, solver }),
                _ => None,
            }
        } else {
            None
        };
        rows.push(ScoreRow {
            triplet_id: rec[0].parse().map_err(|_| bad("bad triplet id"))?,
            problem_id: rec[1].to_string(),
            language_pair: rec[2].to_string(),
            role: rec[3].parse().map_err(bad)?,
            scores,
            cssg,
        });
    }
    Ok(ScoreTable { metrics, rows })
}

/// Snaps every score to the precision it is written with, so statistics
/// computed now match those recomputed from `scores.csv`.
pub fn quantize(table: &mut ScoreTable) {
    for r in &mut table.rows {
        for s in r.scores.iter_mut().flatten() {
            *s = fmt6(*s).parse().expect("formatted float parses");
        }
    }
}

/// Everything a report directory holds, rendered to bytes.
#[derive(Debug, Clone)]
pub struct ReportFiles {
    pub files: Vec<(&'static str, Vec<u8>)>,
}

pub fn render(
    table: &ScoreTable,
    effects: &[EffectRow],
    matrix: &CorrelationMatrix,
    manifest: Option<&impl Serialize>,
) -> Result<ReportFiles> {
    let mut files = vec![
        (EFFECT_SIZES_CSV, effect_sizes_csv(&table.metrics, effects)?),
        (EFFECT_DETAIL_CSV, effect_detail_csv(effects)?),
        (CORRELATION_CSV, correlation_csv(matrix)?),
        (SCORES_CSV, scores_csv(table)?),
    ];
    if let Some(m) = manifest {
        let mut json = serde_json::to_vec_pretty(m)?;
        json.push(b'\n');
        files.push((MANIFEST_JSON, json));
    }
    Ok(ReportFiles { files })
}

impl ReportFiles {
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}
