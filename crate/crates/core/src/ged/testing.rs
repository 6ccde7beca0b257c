//! Random semantic graphs for property tests.

use rand::Rng;

use crate::pdg::{EdgeKind, NodeKind, NodeLabel};
use crate::semgraph::{SemEdge, SemNode, SemanticGraph, ROOT};

const OPERATIONS: [&str; 4] = ["(assign VAR INT_LIT)", "call", "(if (< VAR PARAM))", "(return VAR)"];
const FUNCTIONS: [&str; 2] = ["f", "g"];

/// A valid semantic graph with at most `max_nodes` nodes (root included).
/// Labels come from a small pool so that many pairs are compatible.
pub fn random_graph<R: Rng>(rng: &mut R, max_nodes: usize) -> SemanticGraph {
    let mut g = SemanticGraph::root_only();
    let extra = rng.random_range(0..max_nodes.max(1));
    for _ in 0..extra {
        let node = if rng.random_bool(0.25) {
            let name = FUNCTIONS[rng.random_range(0..FUNCTIONS.len())];
            SemNode {
                label: NodeLabel::function(name),
                kind: NodeKind::Entry,
                function: name.into(),
                span: Default::default(),
            }
        } else {
            let detail = OPERATIONS[rng.random_range(0..OPERATIONS.len())];
            SemNode {
                label: NodeLabel::operation(detail),
                kind: NodeKind::Statement,
                function: String::new(),
                span: Default::default(),
            }
        };
        g.nodes.push(node);
    }
    let n = g.nodes.len();
    for v in 1..n {
        if g.nodes[v].kind == NodeKind::Entry {
            g.edges.push(SemEdge {
                src: ROOT,
                dst: v,
                kind: EdgeKind::Root,
            });
        }
    }
    if n > 1 {
        let m = rng.random_range(0..=2 * n);
        for _ in 0..m {
            let src = rng.random_range(1..n);
            let dst = rng.random_range(1..n);
            let kind = if g.nodes[dst].kind == NodeKind::Entry && rng.random_bool(0.5) {
                EdgeKind::Call
            } else if rng.random_bool(0.5) {
                EdgeKind::Data
            } else {
                EdgeKind::Control
            };
            g.edges.push(SemEdge { src, dst, kind });
        }
    }
    g.edges.sort_unstable();
    g.edges.dedup();
    g
}

pub fn random_pair<R: Rng>(rng: &mut R, max_nodes: usize) -> (SemanticGraph, SemanticGraph) {
    (random_graph(rng, max_nodes), random_graph(rng, max_nodes))
}
