//! Token-overlap baselines.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::frontend::TokenStream;

const MAX_ORDER: usize = 4;

fn ngram_counts<'a>(tokens: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    for w in tokens.windows(n) {
        *counts.entry(w).or_insert(0) += 1;
    }
    counts
}

/// BLEU-4 of `candidate` against `reference`, with add-one smoothing for
/// orders above one and the usual brevity penalty.
pub fn bleu(reference: &TokenStream, candidate: &TokenStream) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::EmptyInput("bleu reference"));
    }
    let r: Vec<&str> = reference.texts().collect();
    let c: Vec<&str> = candidate.texts().collect();
    if c.is_empty() {
        return Ok(0.0);
    }
    let mut log_sum = 0.0;
    for n in 1..=MAX_ORDER {
        let total = c.len().saturating_sub(n - 1);
        let ref_counts = ngram_counts(&r, n);
        let matches: usize = ngram_counts(&c, n)
            .into_iter()
            .map(|(g, k)| k.min(ref_counts.get(g).copied().unwrap_or(0)))
            .sum();
        let p = if n == 1 {
            if matches == 0 {
                return Ok(0.0);
            }
            matches as f64 / total as f64
        } else {
            (matches + 1) as f64 / (total + 1) as f64
        };
        log_sum += p.ln();
    }
    let bp = if c.len() > r.len() {
        1.0
    } else {
        (1.0 - r.len() as f64 / c.len() as f64).exp()
    };
    Ok((bp * (log_sum / MAX_ORDER as f64).exp()).clamp(0.0, 1.0))
}

/// Jaccard index over distinct token texts; 1 when both are empty.
pub fn jaccard(a: &TokenStream, b: &TokenStream) -> f64 {
    let sa: HashSet<&str> = a.texts().collect();
    let sb: HashSet<&str> = b.texts().collect();
    let union = sa.union(&sb).count();
    if union == 0 {
        return 1.0;
    }
    sa.intersection(&sb).count() as f64 / union as f64
}
