//! Exhaustive reference solver for tiny graphs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::semgraph::{SemEdge, SemanticGraph, ROOT};

pub const ORACLE_MAX_NODES: usize = 8;

/// Tries every partial injective mapping that pairs the roots and only
/// pairs equal labels, and returns the cheapest total cost. Mappings that
/// leave compatible nodes unpaired are included.
pub fn ged_oracle(g1: &SemanticGraph, g2: &SemanticGraph) -> Result<usize> {
    for g in [g1, g2] {
        if g.node_count() > ORACLE_MAX_NODES {
            return Err(Error::OracleTooLarge(g.node_count()));
        }
    }
    let target: HashSet<SemEdge> = g2.edges.iter().copied().collect();
    let mut phi: Vec<Option<usize>> = vec![None; g1.node_count()];
    let mut taken = vec![false; g2.node_count()];
    let mut best = usize::MAX;
    if !g1.nodes.is_empty() && !g2.nodes.is_empty() && g1.nodes[ROOT].label == g2.nodes[ROOT].label {
        phi[ROOT] = Some(ROOT);
        taken[ROOT] = true;
        enumerate(g1, g2, &target, 1, &mut phi, &mut taken, &mut best);
    } else {
        enumerate(g1, g2, &target, 0, &mut phi, &mut taken, &mut best);
    }
    Ok(best)
}

fn enumerate(
    g1: &SemanticGraph,
    g2: &SemanticGraph,
    target: &HashSet<SemEdge>,
    next: usize,
    phi: &mut Vec<Option<usize>>,
    taken: &mut Vec<bool>,
    best: &mut usize,
) {
    if next == g1.node_count() {
        *best = (*best).min(cost(g1, g2, target, phi));
        return;
    }
    enumerate(g1, g2, target, next + 1, phi, taken, best);
    for w in 0..g2.node_count() {
        if taken[w] || w == ROOT || g1.nodes[next].label != g2.nodes[w].label {
            continue;
        }
        phi[next] = Some(w);
        taken[w] = true;
        enumerate(g1, g2, target, next + 1, phi, taken, best);
        taken[w] = false;
        phi[next] = None;
    }
}

fn cost(g1: &SemanticGraph, g2: &SemanticGraph, target: &HashSet<SemEdge>, phi: &[Option<usize>]) -> usize {
    let mapped = phi.iter().flatten().count();
    let deleted_nodes = g1.node_count() - mapped;
    let inserted_nodes = g2.node_count() - mapped;
    let mut kept = HashSet::new();
    for e in &g1.edges {
        if let (Some(s), Some(d)) = (phi[e.src], phi[e.dst]) {
            let image = SemEdge { src: s, dst: d, kind: e.kind };
            if target.contains(&image) {
                kept.insert(image);
            }
        }
    }
    let deleted_edges = g1.edges.len() - kept.len();
    let inserted_edges = g2.edges.len() - kept.len();
    deleted_nodes + inserted_nodes + deleted_edges + inserted_edges
}
