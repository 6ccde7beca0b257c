use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelCategory {
    Operation,
    IdentifierClass,
    ConstantClass,
    FunctionName,
    Root,
}

impl LabelCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            LabelCategory::Operation => "operation",
            LabelCategory::IdentifierClass => "identifier_class",
            LabelCategory::ConstantClass => "constant_class",
            LabelCategory::FunctionName => "function_name",
            LabelCategory::Root => "root",
        }
    }
}

impl std::str::FromStr for LabelCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "operation" => LabelCategory::Operation,
            "identifier_class" => LabelCategory::IdentifierClass,
            "constant_class" => LabelCategory::ConstantClass,
            "function_name" => LabelCategory::FunctionName,
            "root" => LabelCategory::Root,
            other => return Err(format!("unknown label category `{other}`")),
        })
    }
}

/// Identifier classes; variable names never reach a label.
pub const IDENTIFIER_CLASSES: [&str; 3] = ["VAR", "PARAM", "THIS"];

/// Constant classes; literal values never reach a label.
pub const CONSTANT_CLASSES: [&str; 5] = ["INT_LIT", "FLOAT_LIT", "STR_LIT", "BOOL_LIT", "NULL_LIT"];

pub const ROOT_DETAIL: &str = "ROOT";

/// Normalized semantic category of a graph node.
///
/// Statement nodes carry an `operation` label whose detail is a compact
/// s-expression over operator symbols and identifier/constant classes,
/// e.g. `(assign VAR (+ VAR INT_LIT))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeLabel {
    pub category: LabelCategory,
    pub detail: String,
}

impl NodeLabel {
    pub fn root() -> Self {
        NodeLabel {
            category: LabelCategory::Root,
            detail: ROOT_DETAIL.to_string(),
        }
    }

    pub fn function(name: impl Into<String>) -> Self {
        NodeLabel {
            category: LabelCategory::FunctionName,
            detail: name.into(),
        }
    }

    pub fn operation(detail: impl Into<String>) -> Self {
        NodeLabel {
            category: LabelCategory::Operation,
            detail: detail.into(),
        }
    }

    /// Picks the category from the shape of an expression skeleton.
    pub fn for_skeleton(skeleton: String) -> Self {
        let category = if IDENTIFIER_CLASSES.contains(&skeleton.as_str()) {
            LabelCategory::IdentifierClass
        } else if CONSTANT_CLASSES.contains(&skeleton.as_str()) {
            LabelCategory::ConstantClass
        } else {
            LabelCategory::Operation
        };
        normalize_label(&NodeLabel {
            category,
            detail: skeleton,
        })
    }

    pub fn is_function(&self) -> bool {
        self.category == LabelCategory::FunctionName
    }

    pub fn is_root(&self) -> bool {
        self.category == LabelCategory::Root
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.category.as_str(), self.detail)
    }
}

/// Canonical spelling of an operator across the supported languages.
pub fn canonical_operator(op: &str) -> String {
    if op.contains(',') {
        return op.split(',').map(canonical_operator).collect::<Vec<_>>().join(",");
    }
    let op = op.split_whitespace().collect::<Vec<_>>().join(" ");
    match op.as_str() {
        "&&" => "and".into(),
        "||" => "or".into(),
        "!" => "not".into(),
        "is" | "===" => "==".into(),
        "is not" | "<>" | "!==" => "!=".into(),
        "not in" => "not_in".into(),
        "=" => "assign".into(),
        _ => op,
    }
}

/// Normalizes a label: function names and the root are kept verbatim, other
/// details get canonical operator spellings and single-space separation.
/// Idempotent.
pub fn normalize_label(label: &NodeLabel) -> NodeLabel {
    match label.category {
        LabelCategory::FunctionName | LabelCategory::Root => label.clone(),
        category => NodeLabel {
            category,
            detail: normalize_detail(&label.detail),
        },
    }
}

fn normalize_detail(detail: &str) -> String {
    let mut out = String::with_capacity(detail.len());
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut String| {
        if atom.is_empty() {
            return;
        }
        if !out.is_empty() && !out.ends_with('(') {
            out.push(' ');
        }
        out.push_str(&canonical_operator(atom));
        atom.clear();
    };
    for ch in detail.chars() {
        match ch {
            '(' => {
                flush(&mut atom, &mut out);
                if !out.is_empty() && !out.ends_with('(') {
                    out.push(' ');
                }
                out.push('(');
            }
            ')' => {
                flush(&mut atom, &mut out);
                out.push(')');
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    out
}
