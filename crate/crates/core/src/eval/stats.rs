use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectSize {
    pub cohens_d: f64,
    pub n_pos: usize,
    pub n_neg: usize,
    pub mean_pos: f64,
    pub mean_neg: f64,
    pub pooled_sd: f64,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample variance (n - 1 denominator).
fn variance(xs: &[f64], m: f64) -> f64 {
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Standardized mean difference with pooled standard deviation.
pub fn cohens_d(pos: &[f64], neg: &[f64]) -> Result<EffectSize> {
    for xs in [pos, neg] {
        if xs.len() < 2 {
            return Err(Error::InsufficientSample { needed: 2, got: xs.len() });
        }
    }
    let (n1, n2) = (pos.len() as f64, neg.len() as f64);
    let (m1, m2) = (mean(pos), mean(neg));
    let pooled = (((n1 - 1.0) * variance(pos, m1) + (n2 - 1.0) * variance(neg, m2)) / (n1 + n2 - 2.0)).sqrt();
    if pooled <= f64::EPSILON * (m1.abs() + m2.abs()).max(1.0) {
        return Err(Error::DegenerateVariance("pooled standard deviation is zero"));
    }
    Ok(EffectSize {
        cohens_d: (m1 - m2) / pooled,
        n_pos: pos.len(),
        n_neg: neg.len(),
        mean_pos: m1,
        mean_neg: m2,
        pooled_sd: pooled,
    })
}

/// Pearson correlation of two equally long samples.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    assert_eq!(x.len(), y.len(), "samples must be aligned");
    if x.len() < 2 {
        return Err(Error::InsufficientSample { needed: 2, got: x.len() });
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateVariance("constant sample"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Pairwise-complete Pearson correlation between columns; `None` where a
/// cell is undefined.
pub fn pearson_matrix(columns: &[Vec<Option<f64>>]) -> Vec<Vec<Option<f64>>> {
    let k = columns.len();
    let mut out = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let (x, y): (Vec<f64>, Vec<f64>) = columns[i]
                .iter()
                .zip(&columns[j])
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .unzip();
            let r = if i == j {
                pearson(&x, &y).ok().map(|_| 1.0)
            } else {
                pearson(&x, &y).ok()
            };
            out[i][j] = r;
            out[j][i] = r;
        }
    }
    out
}

/// Average ranks (ties share the mean rank), 1-based.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    pearson(&ranks(x), &ranks(y))
}
