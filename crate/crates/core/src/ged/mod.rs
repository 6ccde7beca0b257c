//! Root-anchored graph edit distance between semantic graphs.
//!
//! Nodes may only be matched to nodes with an identical label (function
//! entries by name, everything else by normalized label). All insertions
//! and deletions cost 1; an edge is kept for free only when both endpoints
//! are matched and the target has an edge of the same kind between their
//! images.

mod approx;
mod exact;
mod lap;
mod oracle;
#[doc(hidden)]
pub mod testing;

use std::collections::HashMap;

use serde::Serialize;

pub use approx::ged_approx;
pub use exact::{ged_exact, ExactOptions, DEFAULT_EXACT_BUDGET, DEFAULT_EXPANSION_LIMIT};
pub use oracle::{ged_oracle, ORACLE_MAX_NODES};

use crate::pdg::{EdgeKind, NodeKind, NodeLabel};
use crate::semgraph::{SemEdge, SemNode, SemanticGraph, ROOT};

/// Uniform edit costs. Substitution is free between compatible nodes and
/// not allowed otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    pub node_insert: usize,
    pub node_delete: usize,
    pub edge_insert: usize,
    pub edge_delete: usize,
}

impl CostModel {
    pub const UNIFORM: CostModel = CostModel {
        node_insert: 1,
        node_delete: 1,
        edge_insert: 1,
        edge_delete: 1,
    };

    pub fn substitution(&self, a: &SemNode, b: &SemNode) -> Option<usize> {
        compatible(a, b).then_some(0)
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::UNIFORM
    }
}

pub fn compatible(a: &SemNode, b: &SemNode) -> bool {
    a.label == b.label
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Exact,
    Approx,
}

impl Solver {
    pub fn as_str(self) -> &'static str {
        match self {
            Solver::Exact => "exact",
            Solver::Approx => "approx",
        }
    }
}

impl std::fmt::Display for Solver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Solver::Exact),
            "approx" => Ok(Solver::Approx),
            other => Err(format!("unknown solver `{other}`")),
        }
    }
}

/// Partial injective map from nodes of the first graph to the second.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodeMapping {
    /// Sorted by source node.
    pub pairs: Vec<(usize, usize)>,
}

impl NodeMapping {
    fn from_images(images: &[Option<usize>]) -> Self {
        NodeMapping {
            pairs: images.iter().enumerate().filter_map(|(u, w)| w.map(|w| (u, w))).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        NodeMapping { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Injective, root-anchored and label-compatible.
    pub fn is_valid(&self, g1: &SemanticGraph, g2: &SemanticGraph) -> bool {
        let mut src = vec![false; g1.node_count()];
        let mut dst = vec![false; g2.node_count()];
        for &(a, b) in &self.pairs {
            if a >= src.len() || b >= dst.len() || src[a] || dst[b] || !compatible(&g1.nodes[a], &g2.nodes[b]) {
                return false;
            }
            src[a] = true;
            dst[b] = true;
        }
        self.pairs.contains(&(ROOT, ROOT))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EditOp {
    /// Free relabel between compatible nodes (`from` in g1, `to` in g2).
    SubstituteNode { from: usize, to: usize },
    DeleteNode { node: usize },
    InsertNode { node: usize, label: NodeLabel, kind: NodeKind },
    /// Endpoints are g1 ids.
    DeleteEdge { src: usize, dst: usize, kind: EdgeKind },
    /// Endpoints are g2 ids.
    InsertEdge { src: usize, dst: usize, kind: EdgeKind },
}

impl EditOp {
    pub fn cost(&self, model: &CostModel) -> usize {
        match self {
            EditOp::SubstituteNode { .. } => 0,
            EditOp::DeleteNode { .. } => model.node_delete,
            EditOp::InsertNode { .. } => model.node_insert,
            EditOp::DeleteEdge { .. } => model.edge_delete,
            EditOp::InsertEdge { .. } => model.edge_insert,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
    pub total_cost: usize,
    pub mapping: NodeMapping,
    pub solver: Solver,
}

impl EditScript {
    /// Builds the script induced by a mapping.
    pub fn from_mapping(g1: &SemanticGraph, g2: &SemanticGraph, mapping: NodeMapping, solver: Solver) -> Self {
        let mut image = vec![None; g1.node_count()];
        let mut used = vec![false; g2.node_count()];
        for &(a, b) in &mapping.pairs {
            image[a] = Some(b);
            used[b] = true;
        }
        let target: std::collections::HashSet<SemEdge> = g2.edges.iter().copied().collect();
        let mut kept = std::collections::HashSet::new();
        let mut ops = Vec::new();
        for &(from, to) in &mapping.pairs {
            ops.push(EditOp::SubstituteNode { from, to });
        }
        for e in &g1.edges {
            let mapped = match (image[e.src], image[e.dst]) {
                (Some(s), Some(d)) => Some(SemEdge { src: s, dst: d, kind: e.kind }),
                _ => None,
            };
            match mapped {
                Some(m) if target.contains(&m) => {
                    kept.insert(m);
                }
                _ => ops.push(EditOp::DeleteEdge {
                    src: e.src,
                    dst: e.dst,
                    kind: e.kind,
                }),
            }
        }
        for (u, img) in image.iter().enumerate() {
            if img.is_none() {
                ops.push(EditOp::DeleteNode { node: u });
            }
        }
        for (w, n) in g2.nodes.iter().enumerate() {
            if !used[w] {
                ops.push(EditOp::InsertNode {
                    node: w,
                    label: n.label.clone(),
                    kind: n.kind,
                });
            }
        }
        for e in &g2.edges {
            if !kept.contains(e) {
                ops.push(EditOp::InsertEdge {
                    src: e.src,
                    dst: e.dst,
                    kind: e.kind,
                });
            }
        }
        let total_cost = ops.iter().map(|o| o.cost(&CostModel::UNIFORM)).sum();
        EditScript {
            ops,
            total_cost,
            mapping,
            solver,
        }
    }

    /// Replays the script on `g1`, producing a graph in g2's numbering.
    /// `None` if the script is inconsistent with `g1`.
    pub fn apply(&self, g1: &SemanticGraph) -> Option<SemanticGraph> {
        let mut nodes: HashMap<usize, SemNode> = HashMap::new();
        let mut image = HashMap::new();
        let mut deleted = std::collections::HashSet::new();
        for op in &self.ops {
            match op {
                EditOp::SubstituteNode { from, to } => {
                    let n = g1.nodes.get(*from)?.clone();
                    if nodes.insert(*to, n).is_some() || image.insert(*from, *to).is_some() {
                        return None;
                    }
                }
                EditOp::InsertNode { node, label, kind } => {
                    let n = SemNode {
                        label: label.clone(),
                        kind: *kind,
                        function: String::new(),
                        span: Default::default(),
                    };
                    if nodes.insert(*node, n).is_some() {
                        return None;
                    }
                }
                EditOp::DeleteNode { node } => {
                    if *node >= g1.node_count() || !deleted.insert(*node) {
                        return None;
                    }
                }
                _ => {}
            }
        }
        if image.len() + deleted.len() != g1.node_count() || image.keys().any(|k| deleted.contains(k)) {
            return None;
        }
        let mut edges: std::collections::HashSet<SemEdge> = g1.edges.iter().copied().collect();
        for op in &self.ops {
            if let EditOp::DeleteEdge { src, dst, kind } = op {
                if !edges.remove(&SemEdge { src: *src, dst: *dst, kind: *kind }) {
                    return None;
                }
            }
        }
        let mut out: Vec<SemEdge> = Vec::new();
        for e in edges {
            out.push(SemEdge {
                src: *image.get(&e.src)?,
                dst: *image.get(&e.dst)?,
                kind: e.kind,
            });
        }
        for op in &self.ops {
            if let EditOp::InsertEdge { src, dst, kind } = op {
                out.push(SemEdge { src: *src, dst: *dst, kind: *kind });
            }
        }
        out.sort_unstable();
        let before = out.len();
        out.dedup();
        if out.len() != before {
            return None;
        }
        let n = nodes.len();
        let nodes = (0..n).map(|i| nodes.remove(&i)).collect::<Option<Vec<_>>>()?;
        Some(SemanticGraph { nodes, edges: out })
    }

    /// Whether replaying the script on `g1` yields `g2` (labels and edges).
    pub fn transforms(&self, g1: &SemanticGraph, g2: &SemanticGraph) -> bool {
        match self.apply(g1) {
            Some(h) => {
                h.edges == g2.edges
                    && h.nodes.len() == g2.nodes.len()
                    && h.nodes.iter().zip(&g2.nodes).all(|(a, b)| a.label == b.label)
            }
            None => false,
        }
    }

    /// The same edit seen from the other side.
    pub(crate) fn reversed(self, g1: &SemanticGraph, g2: &SemanticGraph) -> EditScript {
        let solver = self.solver;
        EditScript::from_mapping(g2, g1, self.mapping.inverse(), solver)
    }
}

pub(crate) fn kind_bit(k: EdgeKind) -> u8 {
    match k {
        EdgeKind::Data => 1,
        EdgeKind::Control => 2,
        EdgeKind::Call => 4,
        EdgeKind::Root => 8,
    }
}

/// Dense form used by the solvers; labels are interned jointly for a pair.
pub(crate) struct Prepared {
    pub n: usize,
    pub label: Vec<u32>,
    /// `adj[u * n + v]`: bitmask of edge kinds u -> v.
    pub adj: Vec<u8>,
    pub edges: Vec<(usize, usize, u8)>,
    /// Edge indices touching each node.
    pub incident: Vec<Vec<usize>>,
}

impl Prepared {
    pub fn mask(&self, u: usize, v: usize) -> u8 {
        self.adj[u * self.n + v]
    }
}

pub(crate) fn prepare_pair(g1: &SemanticGraph, g2: &SemanticGraph) -> (Prepared, Prepared, usize) {
    let mut ids: HashMap<&NodeLabel, u32> = HashMap::new();
    let mut intern = |l| {
        let next = ids.len() as u32;
        *ids.entry(l).or_insert(next)
    };
    let l1: Vec<u32> = g1.nodes.iter().map(|n| intern(&n.label)).collect();
    let l2: Vec<u32> = g2.nodes.iter().map(|n| intern(&n.label)).collect();
    let labels = ids.len();
    (prep(g1, l1), prep(g2, l2), labels)
}

fn prep(g: &SemanticGraph, label: Vec<u32>) -> Prepared {
    let n = g.node_count();
    let mut adj = vec![0u8; n * n];
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut incident = vec![Vec::new(); n];
    for e in &g.edges {
        let bit = kind_bit(e.kind);
        if adj[e.src * n + e.dst] & bit != 0 {
            continue;
        }
        adj[e.src * n + e.dst] |= bit;
        let idx = edges.len();
        edges.push((e.src, e.dst, bit));
        incident[e.src].push(idx);
        if e.dst != e.src {
            incident[e.dst].push(idx);
        }
    }
    Prepared {
        n,
        label,
        adj,
        edges,
        incident,
    }
}

/// Edges of g1 kept under `image`.
pub(crate) fn preserved_edges(p1: &Prepared, p2: &Prepared, image: &[Option<usize>]) -> usize {
    p1.edges
        .iter()
        .filter(|&&(u, v, bit)| match (image[u], image[v]) {
            (Some(a), Some(b)) => p2.mask(a, b) & bit != 0,
            _ => false,
        })
        .count()
}

/// Cost of the edit induced by `image` under uniform costs.
#[cfg(test)]
pub(crate) fn mapping_cost(p1: &Prepared, p2: &Prepared, image: &[Option<usize>]) -> usize {
    let mapped = image.iter().filter(|x| x.is_some()).count();
    let kept = preserved_edges(p1, p2, image);
    p1.n + p2.n - 2 * mapped + p1.edges.len() + p2.edges.len() - 2 * kept
}

/// Strict total order on graphs, used to pick a canonical direction.
pub(crate) fn direction_key(g: &SemanticGraph) -> (usize, usize, Vec<&NodeLabel>, &[SemEdge]) {
    (
        g.node_count(),
        g.edge_count(),
        g.nodes.iter().map(|n| &n.label).collect(),
        &g.edges,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{Language, SourceUnit};
    use crate::semgraph::build_semantic_graph;

    fn py(src: &str) -> SemanticGraph {
        build_semantic_graph(&SourceUnit::new(Language::Python, src, "t")).unwrap()
    }

    #[test]
    fn compatibility_rules() {
        let g = py("def main():\n    x = 1\n    y = 2\n\ndef solve():\n    x = 1 + 2\n");
        let main = g.nodes.iter().find(|n| n.label.detail == "main").unwrap();
        let solve = g.nodes.iter().find(|n| n.label.detail == "solve").unwrap();
        assert!(compatible(main, main));
        assert!(!compatible(main, solve));
        let ops: Vec<_> = g.nodes.iter().filter(|n| n.label.detail.starts_with("(assign")).collect();
        assert!(compatible(ops[0], ops[1]));
        assert!(!compatible(ops[0], ops[2]));
        assert_eq!(CostModel::UNIFORM.substitution(ops[0], ops[2]), None);
    }

    #[test]
    fn script_replays_to_target() {
        let a = py("def f(x):\n    y = x + 1\n    return y\n");
        let b = py("def f(x):\n    if x:\n        y = x + 1\n    print(y)\n");
        let s = ged_approx(&a, &b);
        assert!(s.mapping.is_valid(&a, &b));
        assert!(s.transforms(&a, &b));
        let r = s.clone().reversed(&a, &b);
        assert_eq!(r.total_cost, s.total_cost);
        assert!(r.transforms(&b, &a));
    }

    #[test]
    fn tampered_script_is_rejected() {
        let a = py("x = 1\n");
        let b = py("x = 1\ny = 2\n");
        let mut s = ged_approx(&a, &b);
        s.ops.retain(|o| !matches!(o, EditOp::InsertEdge { .. }));
        assert!(!s.transforms(&a, &b));
    }
}
