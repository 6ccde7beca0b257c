//! Exact edit distance by branch and bound.
//!
//! Mapping an extra compatible pair never increases the cost (it saves two
//! node operations and can only keep more edges), so every optimum maps
//! `min(count1, count2)` nodes of each label. The search therefore only
//! chooses *which* nodes pair up, maximizing kept edges. The bound counts,
//! per (source label, target label, kind), how many undecided edges could
//! still find a partner.

use std::collections::HashMap;

use super::approx::{classes, ged_approx};
use super::{direction_key, prepare_pair, preserved_edges, EditScript, NodeMapping, Prepared, Solver};
use crate::error::{Error, Result};
use crate::semgraph::SemanticGraph;

/// Combined node count above which the exact solver refuses to run.
pub const DEFAULT_EXACT_BUDGET: usize = 80;
/// Search nodes expanded before giving up.
pub const DEFAULT_EXPANSION_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub budget: usize,
    pub expansion_limit: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: DEFAULT_EXACT_BUDGET,
            expansion_limit: DEFAULT_EXPANSION_LIMIT,
        }
    }
}

/// Minimum-cost edit script. Fails with `BudgetExceeded` when the graphs
/// are too large together and `SearchExhausted` when the search hits its
/// expansion limit.
pub fn ged_exact(g1: &SemanticGraph, g2: &SemanticGraph, opts: &ExactOptions) -> Result<EditScript> {
    let nodes = g1.node_count() + g2.node_count();
    if nodes > opts.budget {
        return Err(Error::BudgetExceeded {
            nodes,
            limit: opts.budget,
        });
    }
    // Solve in a fixed direction so both argument orders do the same work.
    if direction_key(g1) > direction_key(g2) {
        return Ok(solve(g2, g1, opts.expansion_limit)?.reversed(g2, g1));
    }
    solve(g1, g2, opts.expansion_limit)
}

struct Search<'a> {
    p1: &'a Prepared,
    p2: &'a Prepared,
    order: Vec<usize>,
    class2: HashMap<u32, Vec<usize>>,
    slack: HashMap<u32, usize>,
    type1: Vec<usize>,
    type2: Vec<usize>,
    rem1: Vec<usize>,
    rem2: Vec<usize>,
    bound: usize,
    kept: usize,
    image: Vec<Option<usize>>,
    decided: Vec<bool>,
    used: Vec<bool>,
    best_kept: usize,
    best: Vec<Option<usize>>,
    hint: Vec<Option<usize>>,
    expansions: u64,
    limit: u64,
    aborted: bool,
}

fn solve(g1: &SemanticGraph, g2: &SemanticGraph, limit: u64) -> Result<EditScript> {
    let (p1, p2, _) = prepare_pair(g1, g2);
    let incumbent = ged_approx(g1, g2);
    let mut hint = vec![None; p1.n];
    for &(a, b) in &incumbent.mapping.pairs {
        hint[a] = Some(b);
    }
    let best_kept = preserved_edges(&p1, &p2, &hint);

    let c1 = classes(&p1);
    let c2 = classes(&p2);
    let slack: HashMap<u32, usize> = c1
        .iter()
        .map(|(l, m)| (*l, m.len().saturating_sub(c2.get(l).map_or(0, Vec::len))))
        .collect();

    // Edge types shared by both graphs.
    let mut types: HashMap<(u32, u32, u8), usize> = HashMap::new();
    let mut type_of = |p: &Prepared| -> Vec<usize> {
        p.edges
            .iter()
            .map(|&(s, d, bit)| {
                let next = types.len();
                *types.entry((p.label[s], p.label[d], bit)).or_insert(next)
            })
            .collect()
    };
    let type1 = type_of(&p1);
    let type2 = type_of(&p2);
    let mut rem1 = vec![0; types.len()];
    let mut rem2 = vec![0; types.len()];
    type1.iter().for_each(|&t| rem1[t] += 1);
    type2.iter().for_each(|&t| rem2[t] += 1);
    let bound = rem1.iter().zip(&rem2).map(|(a, b)| *a.min(b)).sum();

    let candidates = |u: usize| c2.get(&p1.label[u]).map_or(0, Vec::len) + usize::from(slack[&p1.label[u]] > 0);
    let mut order: Vec<usize> = (0..p1.n).collect();
    order.sort_by_key(|&u| (candidates(u), std::cmp::Reverse(p1.incident[u].len()), u));

    let mut s = Search {
        p1: &p1,
        p2: &p2,
        order,
        class2: c2.into_iter().collect(),
        slack,
        type1,
        type2,
        rem1,
        rem2,
        bound,
        kept: 0,
        image: vec![None; p1.n],
        decided: vec![false; p1.n],
        used: vec![false; p2.n],
        best_kept,
        best: hint.clone(),
        hint,
        expansions: 0,
        limit,
        aborted: false,
    };
    s.dfs(0);
    if s.aborted {
        return Err(Error::SearchExhausted(s.expansions));
    }
    Ok(EditScript::from_mapping(
        g1,
        g2,
        NodeMapping::from_images(&s.best),
        Solver::Exact,
    ))
}

impl Search<'_> {
    fn dfs(&mut self, depth: usize) {
        if self.aborted {
            return;
        }
        if depth == self.order.len() {
            if self.kept > self.best_kept {
                self.best_kept = self.kept;
                self.best = self.image.clone();
            }
            return;
        }
        if self.kept + self.bound <= self.best_kept {
            return;
        }
        self.expansions += 1;
        if self.expansions > self.limit {
            self.aborted = true;
            return;
        }
        let u = self.order[depth];
        let label = self.p1.label[u];
        let mut choices: Vec<usize> = self
            .class2
            .get(&label)
            .map(|ws| ws.iter().copied().filter(|&w| !self.used[w]).collect())
            .unwrap_or_default();
        if let Some(h) = self.hint[u] {
            if let Some(pos) = choices.iter().position(|&w| w == h) {
                choices[..=pos].rotate_right(1);
            }
        }
        for w in choices {
            let saved = (self.bound, self.kept);
            self.place(u, Some(w));
            self.dfs(depth + 1);
            self.unplace(u, Some(w));
            (self.bound, self.kept) = saved;
        }
        if self.slack[&label] > 0 {
            let saved = (self.bound, self.kept);
            *self.slack.get_mut(&label).unwrap() -= 1;
            self.place(u, None);
            self.dfs(depth + 1);
            self.unplace(u, None);
            *self.slack.get_mut(&label).unwrap() += 1;
            (self.bound, self.kept) = saved;
        }
    }

    fn place(&mut self, u: usize, w: Option<usize>) {
        self.decided[u] = true;
        self.image[u] = w;
        for &e in &self.p1.incident[u] {
            let (s, d, bit) = self.p1.edges[e];
            let other = if s == u { d } else { s };
            if !self.decided[other] {
                continue;
            }
            let t = self.type1[e];
            if self.rem1[t] <= self.rem2[t] {
                self.bound -= 1;
            }
            self.rem1[t] -= 1;
            if let (Some(a), Some(b)) = (self.image[s], self.image[d]) {
                if self.p2.mask(a, b) & bit != 0 {
                    self.kept += 1;
                }
            }
        }
        if let Some(w) = w {
            self.used[w] = true;
            for &f in &self.p2.incident[w] {
                let (s, d, _) = self.p2.edges[f];
                let other = if s == w { d } else { s };
                if !self.used[other] {
                    continue;
                }
                let t = self.type2[f];
                if self.rem2[t] <= self.rem1[t] {
                    self.bound -= 1;
                }
                self.rem2[t] -= 1;
            }
        }
    }

    fn unplace(&mut self, u: usize, w: Option<usize>) {
        for &e in &self.p1.incident[u] {
            let (s, d, _) = self.p1.edges[e];
            let other = if s == u { d } else { s };
            if self.decided[other] {
                self.rem1[self.type1[e]] += 1;
            }
        }
        if let Some(w) = w {
            for &f in &self.p2.incident[w] {
                let (s, d, _) = self.p2.edges[f];
                let other = if s == w { d } else { s };
                if self.used[other] {
                    self.rem2[self.type2[f]] += 1;
                }
            }
            self.used[w] = false;
        }
        self.decided[u] = false;
        self.image[u] = None;
    }
}
