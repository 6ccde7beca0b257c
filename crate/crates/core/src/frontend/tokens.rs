use serde::Serialize;

use super::{is_string_kind, parse_tree, SourceUnit};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Identifier,
    Keyword,
    Operator,
    Literal,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.text.as_str())
    }
}

fn is_literal_kind(kind: &str) -> bool {
    kind.contains("literal")
        || matches!(
            kind,
            "integer" | "float" | "true" | "false" | "none" | "null" | "nullptr" | "concatenated_string"
        )
}

fn classify(node: &tree_sitter::Node<'_>, text: &str) -> TokenKind {
    let kind = node.kind();
    if is_literal_kind(kind) || is_string_kind(kind) {
        return TokenKind::Literal;
    }
    if kind.ends_with("identifier") {
        return TokenKind::Identifier;
    }
    if super::is_punctuation(text) {
        return TokenKind::Punctuation;
    }
    if text.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') {
        return TokenKind::Keyword;
    }
    TokenKind::Operator
}

/// Lexical token stream of a unit with comments and whitespace removed.
/// String literals (including f-strings) are single literal tokens.
pub fn tokenize(unit: &SourceUnit) -> Result<TokenStream> {
    let tree = parse_tree(unit)?;
    let src = unit.text.as_str();
    let mut tokens = Vec::new();
    let mut stack = vec![tree.root_node()];
    while let Some(node) = stack.pop() {
        if node.is_extra() && !node.is_error() {
            continue;
        }
        let atomic = is_string_kind(node.kind()) || node.kind() == "concatenated_string";
        if node.child_count() == 0 || atomic {
            let text = &src[node.byte_range()];
            if text.trim().is_empty() {
                continue;
            }
            tokens.push(Token {
                kind: classify(&node, text),
                text: text.to_string(),
            });
            continue;
        }
        let mut cursor = node.walk();
        let children: Vec<_> = node.children(&mut cursor).collect();
        stack.extend(children.into_iter().rev());
    }
    Ok(TokenStream { tokens })
}
