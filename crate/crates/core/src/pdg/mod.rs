//! Per-function program dependence graphs.

pub mod cfg;
pub mod control;
pub mod dataflow;
pub mod label;
pub(crate) mod lower;

use serde::{Deserialize, Serialize};

pub use label::{canonical_operator, normalize_label, LabelCategory, NodeLabel};
pub use lower::Callee;

use crate::frontend::{FunctionDecl, Span};
use cfg::{build_cfg, ENTRY, EXIT};
use dataflow::DefUse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Root,
    Entry,
    Statement,
    Predicate,
    CallSite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Data,
    Control,
    Call,
    Root,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 4] = [EdgeKind::Data, EdgeKind::Control, EdgeKind::Call, EdgeKind::Root];

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Data => "data",
            EdgeKind::Control => "control",
            EdgeKind::Call => "call",
            EdgeKind::Root => "root",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdgNode {
    pub kind: NodeKind,
    pub label: NodeLabel,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdgEdge {
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
}

/// Dependence graph of one function. Node 0 is the entry node, labelled
/// with the function name; the CFG exit node is not kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionGraph {
    pub name: String,
    pub arity: usize,
    pub is_toplevel_wrapper: bool,
    pub span: Span,
    pub nodes: Vec<PdgNode>,
    pub edges: Vec<PdgEdge>,
    /// Call-site nodes with the callee they name.
    pub call_sites: Vec<(usize, Callee)>,
}

impl FunctionGraph {
    pub fn entry(&self) -> usize {
        0
    }
}

/// Lowers `f`, builds its CFG and derives control and data dependences.
pub fn build_function_graph(f: &FunctionDecl) -> FunctionGraph {
    let lowered = lower::lower_function(f);
    let built = build_cfg(&lowered.body);
    let mut facts = vec![DefUse::default(); built.cfg.len()];
    facts[ENTRY].defs = lowered.params.clone();
    for (i, atom) in built.atoms.iter().enumerate() {
        facts[i + 2] = DefUse {
            defs: atom.defs.clone(),
            weak_defs: atom.weak_defs.clone(),
            uses: atom.uses.clone(),
        };
    }
    // CFG ids -> graph ids: entry stays 0, atoms shift down past exit.
    let map = |id: usize| -> Option<usize> {
        match id {
            ENTRY => Some(0),
            EXIT => None,
            n => Some(n - 1),
        }
    };
    let mut nodes = vec![PdgNode {
        kind: NodeKind::Entry,
        label: NodeLabel::function(f.name.clone()),
        span: f.span,
    }];
    let mut call_sites = Vec::new();
    for atom in &built.atoms {
        if let Some(c) = &atom.callee {
            call_sites.push((nodes.len(), c.clone()));
        }
        nodes.push(PdgNode {
            kind: atom.kind,
            label: atom.label.clone(),
            span: atom.span,
        });
    }
    let mut edges = Vec::new();
    for (a, b) in control::control_dependencies(&built.cfg) {
        if let (Some(a), Some(b)) = (map(a), map(b)) {
            edges.push(PdgEdge {
                src: a,
                dst: b,
                kind: EdgeKind::Control,
            });
        }
    }
    for (a, b) in dataflow::data_dependencies(&built.cfg, &facts) {
        if let (Some(a), Some(b)) = (map(a), map(b)) {
            edges.push(PdgEdge {
                src: a,
                dst: b,
                kind: EdgeKind::Data,
            });
        }
    }
    edges.sort_unstable();
    edges.dedup();
    FunctionGraph {
        name: f.name.clone(),
        arity: f.arity(),
        is_toplevel_wrapper: f.is_toplevel_wrapper,
        span: f.span,
        nodes,
        edges,
        call_sites,
    }
}
