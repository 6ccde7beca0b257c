use super::{AstNode, Language, Span};

/// Reserved name of the synthetic function holding top-level statements.
pub const MAIN_WRAPPER: &str = "__main__";

/// Placeholder left where a nested function definition used to be.
pub(crate) const NESTED_PLACEHOLDER: &str = "nested_function";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: String,
    pub params: Vec<String>,
    pub body: AstNode,
    pub is_toplevel_wrapper: bool,
    pub language: Language,
    pub span: Span,
}

impl FunctionDecl {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

/// Splits a parsed unit into one declaration per syntactic function.
///
/// Loose top-level statements go into a single [`MAIN_WRAPPER`] function,
/// which also exists when the unit defines no function at all. Functions
/// nested inside other functions are extracted separately and replaced at
/// their definition site by a placeholder node that lowers to a call site.
pub fn extract_functions(ast: &AstNode, language: Language) -> Vec<FunctionDecl> {
    let mut ex = Extractor {
        language,
        functions: Vec::new(),
        loose: Vec::new(),
    };
    ex.members(ast);

    if !ex.loose.is_empty() || ex.functions.is_empty() {
        let loose = std::mem::take(&mut ex.loose);
        let span = match (loose.first(), loose.last()) {
            (Some(first), Some(last)) => Span::new(first.span.start, last.span.end),
            _ => Span::new(ast.span.start, ast.span.start),
        };
        let stripped = loose.iter().map(|s| ex.strip_nested(s)).collect();
        ex.functions.push(FunctionDecl {
            name: MAIN_WRAPPER.to_string(),
            params: Vec::new(),
            body: AstNode::synthetic("block", span, stripped),
            is_toplevel_wrapper: true,
            language,
            span,
        });
    }
    ex.functions
}

struct Extractor {
    language: Language,
    functions: Vec<FunctionDecl>,
    loose: Vec<AstNode>,
}

impl Extractor {
    /// Walks a member list (module, class body, namespace, ...).
    fn members(&mut self, node: &AstNode) {
        for child in &node.children {
            if self.is_function(child) {
                self.function(child);
            } else if let Some(inner) = self.container_body(child) {
                for body in inner {
                    self.members(body);
                }
            } else if !self.is_declarative_noise(child) {
                self.loose.push(child.clone());
            }
        }
    }

    fn is_function(&self, node: &AstNode) -> bool {
        match self.language {
            Language::Python => {
                node.kind == "function_definition"
                    || (node.kind == "decorated_definition"
                        && node
                            .child_by_field("definition")
                            .is_some_and(|d| d.kind == "function_definition"))
            }
            Language::Java => {
                matches!(node.kind, "method_declaration" | "constructor_declaration" | "compact_constructor_declaration")
                    && node.child_by_field("body").is_some()
            }
            Language::Cpp => node.kind == "function_definition",
        }
    }

    /// Member lists of a container construct (classes, namespaces, templates).
    fn container_body<'a>(&self, node: &'a AstNode) -> Option<Vec<&'a AstNode>> {
        let by_body = || node.child_by_field("body").map(|b| vec![b]);
        match (self.language, node.kind) {
            (Language::Python, "class_definition") => by_body(),
            (Language::Python, "decorated_definition") => {
                let def = node.child_by_field("definition")?;
                (def.kind == "class_definition").then(|| def.child_by_field("body").into_iter().collect())
            }
            (
                Language::Java,
                "class_declaration" | "interface_declaration" | "enum_declaration" | "record_declaration",
            ) => by_body(),
            (Language::Java, "enum_body") => Some(
                node.children
                    .iter()
                    .filter(|c| c.kind == "enum_body_declarations")
                    .collect(),
            ),
            (
                Language::Cpp,
                "namespace_definition" | "struct_specifier" | "class_specifier" | "union_specifier" | "linkage_specification",
            ) => by_body(),
            (Language::Cpp, "template_declaration" | "preproc_ifdef" | "preproc_if") => Some(vec![node]),
            _ => None,
        }
    }

    /// Non-executable declarations that never become statements.
    fn is_declarative_noise(&self, node: &AstNode) -> bool {
        match self.language {
            Language::Python => false,
            Language::Java => match node.kind {
                "field_declaration" | "constant_declaration" => !node
                    .children_by_field("declarator")
                    .any(|d| d.child_by_field("value").is_some()),
                "import_declaration"
                | "package_declaration"
                | "module_declaration"
                | "annotation_type_declaration"
                | "enum_constant"
                | "method_declaration"
                | "constructor_declaration"
                | "modifiers"
                | "identifier"
                | "type_identifier"
                | "superclass"
                | "super_interfaces"
                | "type_parameters" => true,
                _ => false,
            },
            Language::Cpp => {
                node.kind.starts_with("preproc_")
                    || matches!(
                        node.kind,
                        "using_declaration"
                            | "alias_declaration"
                            | "type_definition"
                            | "namespace_alias_definition"
                            | "field_declaration"
                            | "access_specifier"
                            | "enum_specifier"
                            | "template_parameter_list"
                            | "type_parameter_declaration"
                            | "namespace_identifier"
                            | "type_identifier"
                            | "comment"
                    )
                    || (node.kind == "declaration" && contains_kind(node, "function_declarator"))
            }
        }
    }

    fn function(&mut self, node: &AstNode) {
        let def = if node.kind == "decorated_definition" {
            node.child_by_field("definition").unwrap_or(node)
        } else {
            node
        };
        let name = self.function_name(def).unwrap_or_else(|| "<anonymous>".to_string());
        let params = self.params(def);
        let body = def
            .child_by_field("body")
            .cloned()
            .unwrap_or_else(|| AstNode::synthetic("block", Span::new(def.span.end, def.span.end), Vec::new()));
        // Push the outer function first so nested ones follow it in order.
        let index = self.functions.len();
        self.functions.push(FunctionDecl {
            name,
            params,
            body: AstNode::synthetic("block", body.span, Vec::new()),
            is_toplevel_wrapper: false,
            language: self.language,
            span: node.span,
        });
        let stripped = self.strip_nested(&body);
        self.functions[index].body = stripped;
    }

    fn function_name(&self, def: &AstNode) -> Option<String> {
        match self.language {
            Language::Python | Language::Java => def.child_by_field("name").and_then(|n| n.text.clone()),
            Language::Cpp => {
                let declarator = def.child_by_field("declarator")?;
                let fdecl = find_kind(declarator, "function_declarator")?;
                let inner = fdecl.child_by_field("declarator")?;
                let leaf = match inner.kind {
                    "qualified_identifier" => last_leaf(inner),
                    _ => inner.text.clone().or_else(|| last_leaf(inner)),
                };
                leaf.map(|s| s.split_whitespace().collect::<String>())
            }
        }
    }

    fn params(&self, def: &AstNode) -> Vec<String> {
        let list = match self.language {
            Language::Python | Language::Java => def.child_by_field("parameters"),
            Language::Cpp => def
                .child_by_field("declarator")
                .and_then(|d| find_kind(d, "function_declarator"))
                .and_then(|f| f.child_by_field("parameters")),
        };
        let Some(list) = list else { return Vec::new() };
        list.children
            .iter()
            .filter_map(|p| match (self.language, p.kind) {
                (Language::Python, "identifier") => p.text.clone(),
                (Language::Python, _) => p
                    .child_by_field("name")
                    .and_then(|n| n.text.clone())
                    .or_else(|| first_identifier(p)),
                (Language::Java, "formal_parameter") => p.child_by_field("name").and_then(|n| n.text.clone()),
                (Language::Java, "spread_parameter") => first_identifier(p),
                (Language::Java, _) => None,
                (Language::Cpp, _) => p.child_by_field("declarator").and_then(first_identifier),
            })
            .collect()
    }

    /// Clones `node`, extracting nested function definitions and leaving a
    /// placeholder in their place.
    fn strip_nested(&mut self, node: &AstNode) -> AstNode {
        let mut out = AstNode {
            kind: node.kind,
            field: node.field,
            operator: node.operator.clone(),
            span: node.span,
            text: node.text.clone(),
            children: Vec::with_capacity(node.children.len()),
        };
        for child in &node.children {
            if self.is_function(child) {
                let def = if child.kind == "decorated_definition" {
                    child.child_by_field("definition").unwrap_or(child)
                } else {
                    child
                };
                let name = self.function_name(def).unwrap_or_else(|| "<anonymous>".to_string());
                self.function(child);
                out.children.push(AstNode {
                    kind: NESTED_PLACEHOLDER,
                    field: child.field,
                    operator: None,
                    span: child.span,
                    text: Some(name),
                    children: Vec::new(),
                });
            } else {
                out.children.push(self.strip_nested(child));
            }
        }
        out
    }
}

fn find_kind<'a>(node: &'a AstNode, kind: &str) -> Option<&'a AstNode> {
    node.walk().into_iter().find(|n| n.kind == kind)
}

fn contains_kind(node: &AstNode, kind: &str) -> bool {
    find_kind(node, kind).is_some()
}

fn first_identifier(node: &AstNode) -> Option<String> {
    node.walk()
        .into_iter()
        .find(|n| n.kind == "identifier")
        .and_then(|n| n.text.clone())
}

fn last_leaf(node: &AstNode) -> Option<String> {
    node.walk()
        .into_iter()
        .rev()
        .find(|n| n.is_leaf())
        .and_then(|n| n.text.clone())
}
