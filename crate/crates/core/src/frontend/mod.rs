//! Language frontends: grammar-based parsing into a comment-free syntax tree,
//! function segmentation and token streams for the lexical baselines.
//!
//! Each supported language is a tree-sitter grammar behind the same
//! [`parse`] / [`tokenize`] surface. Python and Java are always built; C++
//! is compiled in only with the `cpp` feature.

mod functions;
mod tokens;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use functions::{extract_functions, FunctionDecl, MAIN_WRAPPER};
pub(crate) use functions::NESTED_PLACEHOLDER;
pub use tokens::{tokenize, Token, TokenKind, TokenStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Python,
    Java,
    Cpp,
}

impl Language {
    pub const ALL: [Language; 3] = [Language::Python, Language::Java, Language::Cpp];

    pub fn from_extension(ext: &str) -> Option<Language> {
        match ext.to_ascii_lowercase().as_str() {
            "py" => Some(Language::Python),
            "java" => Some(Language::Java),
            "cc" | "cpp" | "cxx" | "hpp" | "hh" | "h" => Some(Language::Cpp),
            _ => None,
        }
    }

    /// Whether a frontend for this language is compiled into the build.
    pub fn is_supported(self) -> bool {
        match self {
            Language::Python | Language::Java => true,
            Language::Cpp => cfg!(feature = "cpp"),
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Language::Python => "python",
            Language::Java => "java",
            Language::Cpp => "cpp",
        }
    }

    fn grammar(self) -> Result<tree_sitter::Language> {
        match self {
            Language::Python => Ok(tree_sitter_python::LANGUAGE.into()),
            Language::Java => Ok(tree_sitter_java::LANGUAGE.into()),
            #[cfg(feature = "cpp")]
            Language::Cpp => Ok(tree_sitter_cpp::LANGUAGE.into()),
            #[cfg(not(feature = "cpp"))]
            Language::Cpp => Err(Error::UnsupportedLanguage("C++ (built without the `cpp` feature)".into())),
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Python => "Python",
            Language::Java => "Java",
            Language::Cpp => "C++",
        })
    }
}

impl FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "python" | "py" | "python3" => Ok(Language::Python),
            "java" => Ok(Language::Java),
            "cpp" | "c++" | "cxx" => Ok(Language::Cpp),
            other => Err(Error::UnsupportedLanguage(other.to_string())),
        }
    }
}

/// A snippet of source code in one language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub language: Language,
    pub text: String,
    pub id: String,
}

impl SourceUnit {
    pub fn new(language: Language, text: impl Into<String>, id: impl Into<String>) -> Self {
        SourceUnit {
            language,
            text: text.into(),
            id: id.into(),
        }
    }

    /// Builds a unit from raw bytes, rejecting invalid UTF-8.
    pub fn from_bytes(language: Language, bytes: Vec<u8>, id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        match String::from_utf8(bytes) {
            Ok(text) => Ok(SourceUnit { language, text, id }),
            Err(_) => Err(Error::InvalidUtf8(id)),
        }
    }

    pub fn is_blank(&self) -> bool {
        self.text.trim().is_empty()
    }
}

/// Half-open byte range into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// A node of the comment-free syntax tree.
///
/// Only named grammar nodes are kept; anonymous tokens survive as the
/// `operator` of their parent when they denote one (`+`, `<=`, `not in`, ...).
/// String literals are collapsed to leaves unless they interpolate
/// expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AstNode {
    pub kind: &'static str,
    /// Grammar field under which this node hangs from its parent.
    pub field: Option<&'static str>,
    pub operator: Option<String>,
    pub span: Span,
    /// Source text, set on leaves only.
    pub text: Option<String>,
    pub children: Vec<AstNode>,
}

pub const ERROR_KIND: &str = "ERROR";

impl AstNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn child_by_field(&self, field: &str) -> Option<&AstNode> {
        self.children.iter().find(|c| c.field == Some(field))
    }

    pub fn children_by_field<'a>(&'a self, field: &'a str) -> impl Iterator<Item = &'a AstNode> + 'a {
        self.children.iter().filter(move |c| c.field == Some(field))
    }

    pub fn text_or_empty(&self) -> &str {
        self.text.as_deref().unwrap_or("")
    }

    /// Total number of nodes in this subtree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(AstNode::size).sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&AstNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            out.push(node);
            stack.extend(node.children.iter().rev());
        }
        out
    }

    pub(crate) fn synthetic(kind: &'static str, span: Span, children: Vec<AstNode>) -> AstNode {
        AstNode {
            kind,
            field: None,
            operator: None,
            span,
            text: None,
            children,
        }
    }
}

fn is_string_kind(kind: &str) -> bool {
    matches!(
        kind,
        "string" | "string_literal" | "raw_string_literal" | "text_block" | "character_literal" | "char_literal"
    )
}

/// Kinds whose operator is an unlabeled anonymous child.
fn has_anonymous_operator(kind: &str) -> bool {
    matches!(kind, "update_expression" | "not_operator" | "pointer_expression" | "await")
}

fn is_punctuation(tok: &str) -> bool {
    matches!(tok, "(" | ")" | "[" | "]" | "{" | "}" | "," | ";" | ":" | "." | "::")
}

pub(crate) fn new_parser(language: Language) -> Result<tree_sitter::Parser> {
    let grammar = language.grammar()?;
    let mut parser = tree_sitter::Parser::new();
    parser
        .set_language(&grammar)
        .map_err(|e| Error::UnsupportedLanguage(format!("{language}: {e}")))?;
    Ok(parser)
}

pub(crate) fn parse_tree(unit: &SourceUnit) -> Result<tree_sitter::Tree> {
    let mut parser = new_parser(unit.language)?;
    parser.parse(&unit.text, None).ok_or_else(|| Error::ParseFailure {
        language: unit.language,
        id: unit.id.clone(),
    })
}

/// Parses a unit into its comment-free syntax tree. Syntax errors are kept
/// as `ERROR` nodes rather than failing the whole file.
pub fn parse(unit: &SourceUnit) -> Result<AstNode> {
    let tree = parse_tree(unit)?;
    Ok(convert(tree.root_node(), None, &unit.text))
}

fn convert(node: tree_sitter::Node<'_>, field: Option<&'static str>, src: &str) -> AstNode {
    let kind = node.kind();
    let span = Span::new(node.start_byte(), node.end_byte());
    let mut children = Vec::new();
    let mut operators: Vec<String> = Vec::new();
    let anonymous_op = has_anonymous_operator(kind);
    let collapse_string = is_string_kind(kind);

    let mut cursor = node.walk();
    for (i, child) in node.children(&mut cursor).enumerate() {
        if child.is_extra() && !child.is_error() {
            continue;
        }
        let child_field = node.field_name_for_child(i as u32).map(intern);
        if matches!(child_field, Some("operator") | Some("operators")) && !child.is_named() {
            operators.push(normalize_ws(&src[child.byte_range()]));
            continue;
        }
        if !child.is_named() {
            let tok = &src[child.byte_range()];
            if anonymous_op && !is_punctuation(tok) {
                operators.push(tok.to_string());
            }
            continue;
        }
        if collapse_string && child.kind() != "interpolation" {
            continue;
        }
        children.push(convert(child, child_field, src));
    }

    let text = children.is_empty().then(|| src[node.byte_range()].to_string());
    AstNode {
        kind: if node.is_error() || node.is_missing() {
            ERROR_KIND
        } else {
            intern(kind)
        },
        field,
        operator: (!operators.is_empty()).then(|| operators.join(",")),
        span,
        text,
        children,
    }
}

/// Grammar kind and field names form a small closed vocabulary, so leaking
/// each distinct one once is bounded.
fn intern(name: &str) -> &'static str {
    static NAMES: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    let mut names = NAMES.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
    if let Some(existing) = names.get(name) {
        return existing;
    }
    let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
    names.insert(leaked);
    leaked
}

fn normalize_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
