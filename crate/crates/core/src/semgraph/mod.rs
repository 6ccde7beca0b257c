//! Snippet-level semantic graph: every function graph under one global root,
//! joined by call edges.

mod serialize;

use std::collections::HashMap;

pub use serialize::{deserialize, serialize, GraphFormat};

use crate::error::{Error, Result};
use crate::frontend::{extract_functions, parse, SourceUnit, Span};
use crate::pdg::{build_function_graph, EdgeKind, FunctionGraph, LabelCategory, NodeKind, NodeLabel};

pub const ROOT: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemNode {
    pub label: NodeLabel,
    pub kind: NodeKind,
    /// Owning function (possibly arity-suffixed); empty for the root.
    pub function: String,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemEdge {
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallEdge {
    pub src: usize,
    pub dst: usize,
    pub callee_name: String,
}

/// Node 0 is the root. Edges are sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticGraph {
    pub nodes: Vec<SemNode>,
    pub edges: Vec<SemEdge>,
}

impl Default for SemanticGraph {
    fn default() -> Self {
        SemanticGraph::root_only()
    }
}

impl SemanticGraph {
    pub fn root_only() -> Self {
        SemanticGraph {
            nodes: vec![SemNode {
                label: NodeLabel::root(),
                kind: NodeKind::Root,
                function: String::new(),
                span: Span::default(),
            }],
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_root_only(&self) -> bool {
        self.nodes.len() == 1 && self.edges.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.kind == NodeKind::Entry)
            .map(|(i, _)| i)
    }

    pub fn call_edges(&self) -> Vec<CallEdge> {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Call)
            .map(|e| CallEdge {
                src: e.src,
                dst: e.dst,
                callee_name: self.nodes[e.dst].label.detail.clone(),
            })
            .collect()
    }

    /// Whether some directed cycle passes through a call edge.
    pub fn has_call_cycle(&self) -> bool {
        let succ = self.successors();
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Call)
            .any(|e| reachable(&succ, e.dst, e.src))
    }

    pub fn is_acyclic(&self) -> bool {
        let succ = self.successors();
        let mut indeg = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut queue: Vec<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(n) = queue.pop() {
            seen += 1;
            for &s in &succ[n] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    queue.push(s);
                }
            }
        }
        seen == self.nodes.len()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            succ[e.src].push(e.dst);
        }
        succ
    }

    /// Checks the structural invariants: one root at id 0 with no in-edges,
    /// every entry fed by the root, call edges ending at entries, edge
    /// endpoints in range.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        let n = self.nodes.len();
        if n == 0 || self.nodes[ROOT].label.category != LabelCategory::Root {
            return bad("node 0 is not the root".into());
        }
        if self.nodes.iter().filter(|n| n.label.category == LabelCategory::Root).count() != 1 {
            return bad("graph must have exactly one root".into());
        }
        for e in &self.edges {
            if e.src >= n || e.dst >= n {
                return bad(format!("edge {}->{} out of range", e.src, e.dst));
            }
            if e.dst == ROOT {
                return bad("root has an incoming edge".into());
            }
            if (e.kind == EdgeKind::Root) != (e.src == ROOT) {
                return bad(format!("edge {}->{} misuses the root kind", e.src, e.dst));
            }
            if e.kind == EdgeKind::Call && self.nodes[e.dst].kind != NodeKind::Entry {
                return bad(format!("call edge {}->{} does not end at an entry", e.src, e.dst));
            }
        }
        for entry in self.entries() {
            if !self.edges.iter().any(|e| e.src == ROOT && e.dst == entry && e.kind == EdgeKind::Root) {
                return bad(format!("entry {entry} is not linked from the root"));
            }
        }
        Ok(())
    }
}

fn reachable(succ: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = vec![from];
    while let Some(n) = stack.pop() {
        if n == to {
            return true;
        }
        if std::mem::replace(&mut seen[n], true) {
            continue;
        }
        stack.extend(succ[n].iter().copied());
    }
    false
}

/// Display names: overloaded names get an arity suffix, and exact
/// duplicates additionally a definition index.
fn display_names(graphs: &[&FunctionGraph]) -> Vec<String> {
    let mut by_name: HashMap<&str, usize> = HashMap::new();
    let mut by_sig: HashMap<(&str, usize), usize> = HashMap::new();
    for g in graphs {
        *by_name.entry(&g.name).or_default() += 1;
        *by_sig.entry((&g.name, g.arity)).or_default() += 1;
    }
    let mut seen: HashMap<(&str, usize), usize> = HashMap::new();
    graphs
        .iter()
        .map(|g| {
            if by_name[g.name.as_str()] == 1 {
                return g.name.clone();
            }
            let sig = (g.name.as_str(), g.arity);
            let k = seen.entry(sig).or_default();
            *k += 1;
            if by_sig[&sig] == 1 {
                format!("{}/{}", g.name, g.arity)
            } else {
                format!("{}/{}#{}", g.name, g.arity, k)
            }
        })
        .collect()
}

/// Joins function graphs under a global root. Input order does not matter:
/// functions are laid out by (name, span start).
pub fn integrate(graphs: Vec<FunctionGraph>) -> SemanticGraph {
    let mut order: Vec<&FunctionGraph> = graphs.iter().collect();
    order.sort_by(|a, b| (&a.name, a.span.start, a.arity).cmp(&(&b.name, b.span.start, b.arity)));
    let names = display_names(&order);

    let mut g = SemanticGraph::root_only();
    let mut offsets = Vec::with_capacity(order.len());
    for (f, name) in order.iter().zip(&names) {
        let base = g.nodes.len();
        offsets.push(base);
        for (i, node) in f.nodes.iter().enumerate() {
            let label = if i == f.entry() {
                NodeLabel::function(name.clone())
            } else {
                node.label.clone()
            };
            g.nodes.push(SemNode {
                label,
                kind: node.kind,
                function: name.clone(),
                span: node.span,
            });
        }
        g.edges.push(SemEdge {
            src: ROOT,
            dst: base + f.entry(),
            kind: EdgeKind::Root,
        });
        g.edges.extend(f.edges.iter().map(|e| SemEdge {
            src: base + e.src,
            dst: base + e.dst,
            kind: e.kind,
        }));
    }

    for (fi, f) in order.iter().enumerate() {
        for (site, callee) in &f.call_sites {
            if let Some(target) = resolve(&order, &callee.name, callee.arity) {
                g.edges.push(SemEdge {
                    src: offsets[fi] + site,
                    dst: offsets[target] + order[target].entry(),
                    kind: EdgeKind::Call,
                });
            }
        }
    }
    g.edges.sort_unstable();
    g.edges.dedup();
    g
}

/// The unique function by name, else the first overload with matching arity.
fn resolve(order: &[&FunctionGraph], name: &str, arity: Option<usize>) -> Option<usize> {
    let candidates: Vec<usize> = (0..order.len())
        .filter(|&i| order[i].name == name && !order[i].is_toplevel_wrapper)
        .collect();
    match (candidates.as_slice(), arity) {
        ([], _) => None,
        ([only], _) => Some(*only),
        (many, Some(a)) => many.iter().copied().find(|&i| order[i].arity == a),
        (many, None) => many.first().copied(),
    }
}

/// Full pipeline from source text to semantic graph.
pub fn build_semantic_graph(unit: &SourceUnit) -> Result<SemanticGraph> {
    let ast = parse(unit)?;
    let functions = extract_functions(&ast, unit.language);
    Ok(integrate(functions.iter().map(build_function_graph).collect()))
}
