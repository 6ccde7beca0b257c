use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{SemEdge, SemNode, SemanticGraph, ROOT};
use crate::error::{Error, Result};
use crate::frontend::Span;
use crate::pdg::{EdgeKind, LabelCategory, NodeKind, NodeLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    Json,
    Dot,
}

impl std::str::FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(GraphFormat::Json),
            "dot" => Ok(GraphFormat::Dot),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: usize,
    category: LabelCategory,
    detail: String,
    #[serde(rename = "fn")]
    function: String,
    kind: NodeKind,
    #[serde(default)]
    span: [usize; 2],
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    src: usize,
    dst: usize,
    kind: EdgeKind,
}

fn edge_color(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Data => "blue",
        EdgeKind::Control => "orange",
        EdgeKind::Call => "red",
        EdgeKind::Root => "gray",
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn serialize(g: &SemanticGraph, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::Json => {
            let doc = JsonGraph {
                nodes: g
                    .nodes
                    .iter()
                    .enumerate()
                    .map(|(id, n)| JsonNode {
                        id,
                        category: n.label.category,
                        detail: n.label.detail.clone(),
                        function: n.function.clone(),
                        kind: n.kind,
                        span: [n.span.start, n.span.end],
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|e| JsonEdge {
                        src: e.src,
                        dst: e.dst,
                        kind: e.kind,
                    })
                    .collect(),
            };
            let mut out = serde_json::to_vec_pretty(&doc).expect("graph serializes");
            out.push(b'\n');
            out
        }
        GraphFormat::Dot => {
            let mut s = String::from("digraph cssg {\n  node [shape=box, fontname=\"monospace\"];\n");
            for (id, n) in g.nodes.iter().enumerate() {
                let shape = match n.kind {
                    NodeKind::Root => "doublecircle",
                    NodeKind::Entry => "ellipse",
                    NodeKind::Predicate => "diamond",
                    _ => "box",
                };
                let _ = writeln!(
                    s,
                    "  n{id} [label=\"{}\", shape={shape}];",
                    dot_escape(&n.label.to_string())
                );
            }
            for e in &g.edges {
                let _ = writeln!(
                    s,
                    "  n{} -> n{} [kind={}, color={}];",
                    e.src,
                    e.dst,
                    e.kind.as_str(),
                    edge_color(e.kind)
                );
            }
            s.push_str("}\n");
            s.into_bytes()
        }
    }
}

/// Parses the JSON form. Ids are renumbered in listing order with the root
/// moved first; the result is validated.
pub fn deserialize(bytes: &[u8]) -> Result<SemanticGraph> {
    let doc: JsonGraph = serde_json::from_slice(bytes)?;
    let mut order: Vec<&JsonNode> = doc.nodes.iter().collect();
    if let Some(pos) = order.iter().position(|n| n.category == LabelCategory::Root) {
        let root = order.remove(pos);
        order.insert(ROOT, root);
    }
    let mut ids = HashMap::new();
    for (i, n) in order.iter().enumerate() {
        if ids.insert(n.id, i).is_some() {
            return Err(Error::InvalidGraph(format!("duplicate node id {}", n.id)));
        }
    }
    let nodes = order
        .iter()
        .map(|n| SemNode {
            label: NodeLabel {
                category: n.category,
                detail: n.detail.clone(),
            },
            kind: n.kind,
            function: n.function.clone(),
            span: Span::new(n.span[0], n.span[1]),
        })
        .collect();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let (Some(&src), Some(&dst)) = (ids.get(&e.src), ids.get(&e.dst)) else {
            return Err(Error::InvalidGraph(format!("edge {}->{} names an unknown node", e.src, e.dst)));
        };
        edges.push(SemEdge { src, dst, kind: e.kind });
    }
    edges.sort_unstable();
    edges.dedup();
    let g = SemanticGraph { nodes, edges };
    g.validate()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{Language, SourceUnit};
    use crate::semgraph::build_semantic_graph;

    #[test]
    fn root_only_json() {
        let bytes = serialize(&SemanticGraph::root_only(), GraphFormat::Json);
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
        assert_eq!(v["edges"].as_array().unwrap().len(), 0);
        assert_eq!(v["nodes"][0]["category"], "root");
    }

    #[test]
    fn dot_marks_guard_edge() {
        let g = build_semantic_graph(&SourceUnit::new(
            Language::Python,
            "def f(x):\n    if x > 0:\n        print(x)\n",
            "t",
        ))
        .unwrap();
        let dot = String::from_utf8(serialize(&g, GraphFormat::Dot)).unwrap();
        let pred = g.nodes.iter().position(|n| n.kind == NodeKind::Predicate).unwrap();
        let call = g.nodes.iter().position(|n| n.kind == NodeKind::CallSite).unwrap();
        assert!(dot.contains(&format!("n{pred} -> n{call} [kind=control, color=orange];")), "{dot}");
    }

    #[test]
    fn deserialize_renumbers_and_rejects_bad_edges() {
        let json = r#"{"nodes":[
            {"id":7,"category":"function_name","detail":"f","fn":"f","kind":"entry"},
            {"id":3,"category":"root","detail":"ROOT","fn":"","kind":"root"}],
            "edges":[{"src":3,"dst":7,"kind":"root"}]}"#;
        let g = deserialize(json.as_bytes()).unwrap();
        assert_eq!(g.nodes[0].label, NodeLabel::root());
        assert_eq!(g.edges, vec![SemEdge { src: 0, dst: 1, kind: EdgeKind::Root }]);

        let bad = r#"{"nodes":[{"id":0,"category":"root","detail":"ROOT","fn":"","kind":"root"}],
            "edges":[{"src":0,"dst":5,"kind":"root"}]}"#;
        assert!(matches!(deserialize(bad.as_bytes()), Err(Error::InvalidGraph(_))));
    }
}
