//! Lowers a function body into a small structured statement form shared by
//! all languages: straight-line atoms (one per future graph node) plus the
//! control constructs the CFG builder understands.
//!
//! Every atom carries its normalized label and syntactic def/use sets. Calls
//! nested in a statement become their own call-site atoms placed before it;
//! each defines a fresh temporary that the enclosing statement uses.

use std::collections::HashSet;

use super::label::{canonical_operator, NodeLabel};
use super::NodeKind;
use crate::frontend::{AstNode, FunctionDecl, Language, Span, ERROR_KIND, NESTED_PLACEHOLDER};

/// Deeper sub-expressions collapse to `_` in labels.
const MAX_SKELETON_DEPTH: usize = 4;
/// Collection literals keep at most this many element classes in labels.
const MAX_SKELETON_ITEMS: usize = 4;

pub(crate) const TEMP_PREFIX: char = '#';

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Callee {
    pub name: String,
    /// Unknown for nested-function placeholders.
    pub arity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub kind: NodeKind,
    pub label: NodeLabel,
    pub span: Span,
    /// Definitions that overwrite the variable.
    pub defs: Vec<String>,
    /// Partial writes (element/field stores, mutating receivers): they
    /// generate a definition without killing earlier ones.
    pub weak_defs: Vec<String>,
    pub uses: Vec<String>,
    pub callee: Option<Callee>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum JumpKind {
    Break,
    Continue,
    Return,
    Throw,
}

#[derive(Debug, Clone)]
pub(crate) enum Stmt {
    Atoms(Vec<Atom>),
    If {
        head: Vec<Atom>,
        then: Vec<Stmt>,
        els: Vec<Stmt>,
    },
    Loop {
        head: Vec<Atom>,
        body: Vec<Stmt>,
        update: Vec<Stmt>,
        orelse: Vec<Stmt>,
        post_test: bool,
        label: Option<String>,
    },
    Switch {
        head: Vec<Atom>,
        cases: Vec<Vec<Stmt>>,
        fallthrough: bool,
        has_default: bool,
        label: Option<String>,
    },
    Try {
        head: Vec<Atom>,
        body: Vec<Stmt>,
        handlers: Vec<Vec<Stmt>>,
        orelse: Vec<Stmt>,
        finally: Vec<Stmt>,
    },
    Jump {
        atoms: Vec<Atom>,
        kind: JumpKind,
        label: Option<String>,
    },
}

/// Result of lowering one function.
pub(crate) struct Lowered {
    pub params: Vec<String>,
    pub body: Vec<Stmt>,
}

pub(crate) fn lower_function(f: &FunctionDecl) -> Lowered {
    let mut lw = Lowerer {
        lang: f.language,
        params: f.params.iter().cloned().collect(),
        next_temp: 0,
        pending_label: None,
    };
    let mut body = lw.block(&f.body);
    let strong = collect_strong_defs(&body, &f.params);
    filter_weak_defs(&mut body, &strong);
    Lowered {
        params: f.params.clone(),
        body,
    }
}

struct Lowerer {
    lang: Language,
    params: HashSet<String>,
    next_temp: usize,
    pending_label: Option<String>,
}

/// Per-statement accumulator for the expression walk.
#[derive(Default)]
struct Ctx {
    uses: Vec<String>,
    defs: Vec<String>,
    weak: Vec<String>,
    calls: Vec<Atom>,
    bound: Vec<String>,
    /// Inside lambdas: calls are not executed at this site.
    defer_calls: bool,
}

impl Ctx {
    fn nested(&self) -> Ctx {
        Ctx {
            bound: self.bound.clone(),
            defer_calls: self.defer_calls,
            ..Ctx::default()
        }
    }

    fn absorb_effects(&mut self, inner: Ctx) {
        self.uses.extend(inner.uses);
        self.defs.extend(inner.defs);
        self.weak.extend(inner.weak);
        self.calls.extend(inner.calls);
    }
}

fn dedup(v: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    v.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

fn is_identifier(kind: &str) -> bool {
    kind == "identifier"
}

fn literal_class(kind: &str, text: &str) -> Option<&'static str> {
    Some(match kind {
        "integer" | "decimal_integer_literal" | "hex_integer_literal" | "octal_integer_literal" | "binary_integer_literal" => "INT_LIT",
        "float" | "decimal_floating_point_literal" | "hex_floating_point_literal" => "FLOAT_LIT",
        "number_literal" => {
            let t = text.to_ascii_lowercase();
            let hex = t.starts_with("0x");
            if t.contains('.') || (!hex && t.contains('e')) {
                "FLOAT_LIT"
            } else {
                "INT_LIT"
            }
        }
        "string" | "concatenated_string" | "string_literal" | "raw_string_literal" | "text_block" | "character_literal" | "char_literal" => "STR_LIT",
        "true" | "false" => "BOOL_LIT",
        "none" | "null_literal" | "null" | "nullptr" => "NULL_LIT",
        _ => return None,
    })
}

fn short_kind(kind: &str) -> &str {
    kind.trim_end_matches("_statement")
        .trim_end_matches("_expression")
}

fn unwrap_parens(node: &AstNode) -> &AstNode {
    match node.kind {
        "parenthesized_expression" | "condition_clause" if !node.children.is_empty() => {
            let inner = node
                .child_by_field("value")
                .or_else(|| node.children.iter().find(|c| c.field != Some("initializer")))
                .unwrap_or(&node.children[0]);
            unwrap_parens(inner)
        }
        _ => node,
    }
}

/// Kinds that are (or wrap) statements, used to salvage ERROR nodes.
fn is_statement_kind(kind: &str) -> bool {
    kind.ends_with("_statement")
        || matches!(
            kind,
            "block" | "compound_statement" | "local_variable_declaration" | "declaration" | "nested_function"
        )
}

impl Lowerer {
    fn temp(&mut self) -> String {
        self.next_temp += 1;
        format!("{TEMP_PREFIX}c{}", self.next_temp)
    }

    fn ident_class(&self, name: &str) -> &'static str {
        if self.params.contains(name) {
            "PARAM"
        } else {
            "VAR"
        }
    }

    // ---- statements -------------------------------------------------------

    fn block(&mut self, node: &AstNode) -> Vec<Stmt> {
        let mut out = Vec::new();
        for child in &node.children {
            self.stmt(child, &mut out);
        }
        out
    }

    /// Lowers a node that may be a block or a single statement.
    fn body(&mut self, node: Option<&AstNode>) -> Vec<Stmt> {
        let Some(node) = node else { return Vec::new() };
        let mut out = Vec::new();
        self.stmt(node, &mut out);
        out
    }

    fn stmt(&mut self, n: &AstNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "block" | "compound_statement" | "declaration_list" | "static_initializer" | "else_clause"
            | "finally_clause" => {
                for c in &n.children {
                    self.stmt(c, out);
                }
            }
            "expression_statement" => out.push(Stmt::Atoms(self.expression_statement(n))),
            "local_variable_declaration" | "declaration" | "field_declaration" | "constant_declaration" => {
                let atoms = self.declaration(n);
                if !atoms.is_empty() {
                    out.push(Stmt::Atoms(atoms));
                }
            }
            "if_statement" => out.push(self.if_stmt(n)),
            "while_statement" => out.push(self.while_stmt(n)),
            "for_statement" if self.lang == Language::Python => self.for_in(n, out),
            "for_statement" => self.for_c(n, out),
            "enhanced_for_statement" | "for_range_loop" => self.for_in(n, out),
            "do_statement" => out.push(self.do_stmt(n)),
            "switch_expression" | "switch_statement" | "match_statement" => out.push(self.switch(n)),
            "try_statement" | "try_with_resources_statement" => out.push(self.try_stmt(n)),
            "return_statement" => {
                let (mut atoms, atom) = self.simple_atom(n, NodeKind::Statement, "return");
                atoms.push(atom);
                out.push(Stmt::Jump {
                    atoms,
                    kind: JumpKind::Return,
                    label: None,
                });
            }
            "raise_statement" | "throw_statement" => {
                let (mut atoms, atom) = self.simple_atom(n, NodeKind::Statement, "throw");
                atoms.push(atom);
                out.push(Stmt::Jump {
                    atoms,
                    kind: JumpKind::Throw,
                    label: None,
                });
            }
            "break_statement" | "continue_statement" => {
                let is_break = n.kind == "break_statement";
                let word = if is_break { "break" } else { "continue" };
                let label = n
                    .children
                    .iter()
                    .find(|c| c.kind.ends_with("identifier"))
                    .and_then(|c| c.text.clone());
                out.push(Stmt::Jump {
                    atoms: vec![self.plain_atom(n.span, NodeKind::Statement, word)],
                    kind: if is_break { JumpKind::Break } else { JumpKind::Continue },
                    label,
                });
            }
            "labeled_statement" => {
                let label = n
                    .children
                    .iter()
                    .find(|c| c.field == Some("label") || c.kind.ends_with("identifier"))
                    .and_then(|c| c.text.clone());
                for c in n.children.iter().filter(|c| !(c.kind.ends_with("identifier") && c.is_leaf())) {
                    self.pending_label = label.clone();
                    self.stmt(c, out);
                }
                self.pending_label = None;
            }
            "with_statement" => self.with_stmt(n, out),
            "synchronized_statement" => {
                if let Some(lock) = n.children.iter().find(|c| c.kind == "parenthesized_expression") {
                    let (mut atoms, atom) = self.expr_atom(lock, NodeKind::Statement, Some("sync"), n.span);
                    atoms.push(atom);
                    out.push(Stmt::Atoms(atoms));
                }
                out.extend(self.body(n.child_by_field("body")));
            }
            "pass_statement" | "global_statement" | "nonlocal_statement" | "empty_statement" | "comment"
            | "line_comment" | "block_comment" | "using_declaration" | "alias_declaration" | "type_definition" => {}
            "import_statement" | "import_from_statement" | "future_import_statement" => {
                out.push(Stmt::Atoms(vec![self.import_atom(n)]))
            }
            NESTED_PLACEHOLDER => {
                let name = n.text_or_empty().to_string();
                let mut atom = self.plain_atom(n.span, NodeKind::CallSite, "call");
                atom.defs.push(name.clone());
                atom.callee = Some(Callee { name, arity: None });
                out.push(Stmt::Atoms(vec![atom]));
            }
            "class_definition" | "decorated_definition" | "local_class_declaration" | "class_declaration"
            | "struct_specifier" | "class_specifier" | "enum_declaration" | "record_declaration"
            | "interface_declaration" => {
                let mut atom = self.plain_atom(n.span, NodeKind::Statement, "class");
                let def = n.child_by_field("definition").unwrap_or(n);
                if let Some(name) = def.child_by_field("name").and_then(|c| c.text.clone()) {
                    atom.defs.push(name);
                }
                out.push(Stmt::Atoms(vec![atom]));
            }
            ERROR_KIND if n.children.iter().any(|c| is_statement_kind(c.kind)) => {
                for c in &n.children {
                    self.stmt(c, out);
                }
            }
            _ => {
                let (mut atoms, atom) = self.expr_atom(n, NodeKind::Statement, None, n.span);
                atoms.push(atom);
                out.push(Stmt::Atoms(atoms));
            }
        }
    }

    fn plain_atom(&self, span: Span, kind: NodeKind, label: &str) -> Atom {
        Atom {
            kind,
            label: NodeLabel::for_skeleton(label.to_string()),
            span,
            defs: Vec::new(),
            weak_defs: Vec::new(),
            uses: Vec::new(),
            callee: None,
        }
    }

    fn finish_atom(&self, cx: Ctx, kind: NodeKind, skeleton: String, span: Span) -> (Vec<Atom>, Atom) {
        let atom = Atom {
            kind,
            label: NodeLabel::for_skeleton(skeleton),
            span,
            defs: dedup(cx.defs),
            weak_defs: dedup(cx.weak),
            uses: dedup(cx.uses),
            callee: None,
        };
        (cx.calls, atom)
    }

    /// Atom for `node` treated as one expression, optionally wrapped as
    /// `(head <expr>)`.
    fn expr_atom(&mut self, node: &AstNode, kind: NodeKind, head: Option<&str>, span: Span) -> (Vec<Atom>, Atom) {
        let mut cx = Ctx::default();
        let skel = self.expr(node, &mut cx, 1);
        let skel = match head {
            Some(h) => format!("({h} {skel})"),
            None => skel,
        };
        self.finish_atom(cx, kind, skel, span)
    }

    /// `return x`, `raise E(...)`: keyword plus optional operand expression.
    fn simple_atom(&mut self, n: &AstNode, kind: NodeKind, word: &str) -> (Vec<Atom>, Atom) {
        let operands: Vec<&AstNode> = n.children.iter().collect();
        let mut cx = Ctx::default();
        let skel = match operands.as_slice() {
            [] => word.to_string(),
            [one] => format!("({word} {})", self.expr(one, &mut cx, 1)),
            many => {
                let parts: Vec<String> = many.iter().map(|c| self.expr(c, &mut cx, 1)).collect();
                format!("({word} {})", parts.join(" "))
            }
        };
        self.finish_atom(cx, kind, skel, n.span)
    }

    fn expression_statement(&mut self, n: &AstNode) -> Vec<Atom> {
        let exprs: Vec<&AstNode> = n.children.iter().collect();
        if let [only] = exprs.as_slice() {
            let e = unwrap_parens(only);
            if self.is_call(e) {
                let mut cx = Ctx::default();
                self.call(e, &mut cx, true);
                return cx.calls;
            }
        }
        let mut cx = Ctx::default();
        let skel = match exprs.as_slice() {
            [] => "empty".to_string(),
            [one] => self.expr(one, &mut cx, 1),
            many => {
                let parts: Vec<String> = many.iter().map(|c| self.expr(c, &mut cx, 1)).collect();
                format!("(tuple {})", parts.join(" "))
            }
        };
        let (mut atoms, atom) = self.finish_atom(cx, NodeKind::Statement, skel, n.span);
        atoms.push(atom);
        atoms
    }

    fn declaration(&mut self, n: &AstNode) -> Vec<Atom> {
        let mut atoms = Vec::new();
        for d in n.children_by_field("declarator") {
            let (target, value) = match d.kind {
                "variable_declarator" => (d.child_by_field("name"), d.child_by_field("value")),
                "init_declarator" => (d.child_by_field("declarator"), d.child_by_field("value")),
                _ => (Some(d), None),
            };
            let (Some(target), Some(value)) = (target, value) else { continue };
            let mut cx = Ctx::default();
            let t = match first_identifier_text(target) {
                Some(name) => {
                    let class = self.ident_class(&name);
                    cx.defs.push(name);
                    class.to_string()
                }
                None => self.target(target, &mut cx, false, 2),
            };
            let v = if value.kind == "argument_list" {
                // `vector<int> v(n)`: constructor call
                for a in &value.children {
                    self.expr(a, &mut cx, 3);
                }
                "call".to_string()
            } else {
                self.expr(value, &mut cx, 2)
            };
            let (calls, atom) = self.finish_atom(cx, NodeKind::Statement, format!("(assign {t} {v})"), d.span);
            atoms.extend(calls);
            atoms.push(atom);
        }
        atoms
    }

    fn import_atom(&self, n: &AstNode) -> Atom {
        let mut atom = self.plain_atom(n.span, NodeKind::Statement, "import");
        for c in &n.children {
            let name = match c.kind {
                "aliased_import" => c.child_by_field("alias").and_then(|a| a.text.clone()),
                "dotted_name" if c.field == Some("name") || n.kind == "import_statement" => {
                    c.children.first().and_then(|i| i.text.clone())
                }
                _ => None,
            };
            atom.defs.extend(name);
        }
        atom
    }

    /// Predicate atoms evaluating `cond`: calls first, predicate last.
    fn predicate(&mut self, word: &str, cond: Option<&AstNode>, span: Span) -> Vec<Atom> {
        let mut cx = Ctx::default();
        let skel = match cond {
            Some(c) => format!("({word} {})", self.expr(unwrap_parens(c), &mut cx, 2)),
            None => format!("({word})"),
        };
        let (mut atoms, atom) = self.finish_atom(cx, NodeKind::Predicate, skel, span);
        atoms.push(atom);
        atoms
    }

    fn if_stmt(&mut self, n: &AstNode) -> Stmt {
        let head = self.predicate("if", n.child_by_field("condition"), n.span);
        let then = self.body(n.child_by_field("consequence"));
        let alternatives: Vec<&AstNode> = n.children_by_field("alternative").collect();
        let els = self.else_chain(&alternatives);
        Stmt::If { head, then, els }
    }

    fn else_chain(&mut self, alts: &[&AstNode]) -> Vec<Stmt> {
        let Some((first, rest)) = alts.split_first() else { return Vec::new() };
        match first.kind {
            "elif_clause" => {
                let head = self.predicate("if", first.child_by_field("condition"), first.span);
                let then = self.body(first.child_by_field("consequence"));
                let els = self.else_chain(rest);
                vec![Stmt::If { head, then, els }]
            }
            "else_clause" => {
                let mut out = Vec::new();
                match first.child_by_field("body") {
                    Some(b) => self.stmt(b, &mut out),
                    None => {
                        for c in &first.children {
                            self.stmt(c, &mut out);
                        }
                    }
                }
                out
            }
            _ => self.body(Some(first)),
        }
    }

    fn loop_else(&mut self, n: &AstNode) -> Vec<Stmt> {
        match n.child_by_field("alternative") {
            Some(alt) => self.else_chain(&[alt]),
            None => Vec::new(),
        }
    }

    fn while_stmt(&mut self, n: &AstNode) -> Stmt {
        let label = self.pending_label.take();
        let head = self.predicate("while", n.child_by_field("condition"), n.span);
        let body = self.body(n.child_by_field("body"));
        let orelse = self.loop_else(n);
        Stmt::Loop {
            head,
            body,
            update: Vec::new(),
            orelse,
            post_test: false,
            label,
        }
    }

    fn do_stmt(&mut self, n: &AstNode) -> Stmt {
        let label = self.pending_label.take();
        let body = self.body(n.child_by_field("body"));
        let head = self.predicate("do_while", n.child_by_field("condition"), n.span);
        Stmt::Loop {
            head,
            body,
            update: Vec::new(),
            orelse: Vec::new(),
            post_test: true,
            label,
        }
    }

    /// `for x in xs`, `for (T x : xs)`, `for (auto& x : xs)`.
    fn for_in(&mut self, n: &AstNode, out: &mut Vec<Stmt>) {
        let label = self.pending_label.take();
        let (target, iterable) = match n.kind {
            "enhanced_for_statement" => (n.child_by_field("name"), n.child_by_field("value")),
            "for_range_loop" => (n.child_by_field("declarator"), n.child_by_field("right")),
            _ => (n.child_by_field("left"), n.child_by_field("right")),
        };
        // The iterable is evaluated once, before the loop.
        let mut pre = Ctx::default();
        let iter_skel = match iterable {
            Some(it) => self.expr(it, &mut pre, 2),
            None => "_".to_string(),
        };
        let pre_calls = std::mem::take(&mut pre.calls);
        if !pre_calls.is_empty() {
            out.push(Stmt::Atoms(pre_calls));
        }
        let mut cx = Ctx::default();
        cx.absorb_effects(pre);
        let target_skel = match target {
            Some(t) => self.target(t, &mut cx, false, 2),
            None => "_".to_string(),
        };
        let (calls, atom) = self.finish_atom(
            cx,
            NodeKind::Predicate,
            format!("(for_in {target_skel} {iter_skel})"),
            n.span,
        );
        let mut head = calls;
        head.push(atom);
        let body = self.body(n.child_by_field("body"));
        let orelse = self.loop_else(n);
        out.push(Stmt::Loop {
            head,
            body,
            update: Vec::new(),
            orelse,
            post_test: false,
            label,
        });
    }

    /// C-style `for (init; cond; update)`.
    fn for_c(&mut self, n: &AstNode, out: &mut Vec<Stmt>) {
        let label = self.pending_label.take();
        for init in n.children.iter().filter(|c| matches!(c.field, Some("init") | Some("initializer"))) {
            match init.kind {
                "local_variable_declaration" | "declaration" => {
                    let atoms = self.declaration(init);
                    out.push(Stmt::Atoms(atoms));
                }
                _ => {
                    let (mut atoms, atom) = self.expr_atom(init, NodeKind::Statement, None, init.span);
                    atoms.push(atom);
                    out.push(Stmt::Atoms(atoms));
                }
            }
        }
        let head = self.predicate("for", n.child_by_field("condition"), n.span);
        let mut update = Vec::new();
        for u in n.children_by_field("update") {
            let (mut atoms, atom) = self.expr_atom(u, NodeKind::Statement, None, u.span);
            atoms.push(atom);
            update.push(Stmt::Atoms(atoms));
        }
        let body = self.body(n.child_by_field("body"));
        out.push(Stmt::Loop {
            head,
            body,
            update,
            orelse: Vec::new(),
            post_test: false,
            label,
        });
    }

    fn switch(&mut self, n: &AstNode) -> Stmt {
        let label = self.pending_label.take();
        let subject = n.child_by_field("condition").or_else(|| n.child_by_field("subject"));
        let head = self.predicate("switch", subject, n.span);
        let mut cases = Vec::new();
        let mut fallthrough = true;
        let mut has_default = false;
        let body = n.child_by_field("body");
        for case in body.map(|b| b.children.as_slice()).unwrap_or_default() {
            let mut stmts = Vec::new();
            match case.kind {
                // Java: `case X: stmts` groups and `case X -> stmt` rules.
                "switch_block_statement_group" | "switch_rule" => {
                    if case.kind == "switch_rule" {
                        fallthrough = false;
                    }
                    for c in &case.children {
                        if c.kind == "switch_label" {
                            has_default |= c.children.is_empty();
                        } else {
                            self.stmt(c, &mut stmts);
                        }
                    }
                }
                // C++: `case X: stmts` / `default: stmts`.
                "case_statement" => {
                    has_default |= case.child_by_field("value").is_none();
                    for c in case.children.iter().filter(|c| c.field != Some("value")) {
                        self.stmt(c, &mut stmts);
                    }
                }
                // Python: `case pattern: block`.
                "case_clause" => {
                    fallthrough = false;
                    has_default |= case
                        .children
                        .iter()
                        .any(|c| c.kind == "case_pattern" && c.walk().iter().all(|p| p.text.as_deref().is_none_or(|t| t == "_")));
                    stmts.extend(self.body(case.child_by_field("consequence")));
                }
                _ => continue,
            }
            cases.push(stmts);
        }
        Stmt::Switch {
            head,
            cases,
            fallthrough,
            has_default,
            label,
        }
    }

    fn try_stmt(&mut self, n: &AstNode) -> Stmt {
        let mut head = Vec::new();
        if let Some(resources) = n.child_by_field("resources") {
            for r in &resources.children {
                let mut cx = Ctx::default();
                let name = r.child_by_field("name").and_then(|c| c.text.clone());
                let v = match r.child_by_field("value") {
                    Some(v) => self.expr(v, &mut cx, 2),
                    None => self.expr(r, &mut cx, 2),
                };
                cx.defs.extend(name);
                let (calls, atom) = self.finish_atom(cx, NodeKind::Statement, format!("(assign VAR {v})"), r.span);
                head.extend(calls);
                head.push(atom);
            }
        }
        head.push(self.plain_atom(n.span, NodeKind::Predicate, "try"));
        let body = self.body(n.child_by_field("body"));
        let mut handlers = Vec::new();
        let mut orelse = Vec::new();
        let mut finally = Vec::new();
        for c in &n.children {
            match c.kind {
                "except_clause" | "except_group_clause" | "catch_clause" => handlers.push(self.handler(c)),
                "else_clause" => orelse = self.else_chain(&[c]),
                "finally_clause" => {
                    for s in &c.children {
                        self.stmt(s, &mut finally);
                    }
                }
                _ => {}
            }
        }
        Stmt::Try {
            head,
            body,
            handlers,
            orelse,
            finally,
        }
    }

    fn handler(&mut self, c: &AstNode) -> Vec<Stmt> {
        let mut catch = self.plain_atom(c.span, NodeKind::Statement, "catch");
        let mut out = Vec::new();
        match c.kind {
            "catch_clause" => {
                if let Some(p) = c
                    .children
                    .iter()
                    .find(|p| p.kind == "catch_formal_parameter" || p.field == Some("parameters"))
                {
                    let name = p
                        .child_by_field("name")
                        .and_then(|n| n.text.clone())
                        .or_else(|| p.child_by_field("declarator").and_then(first_identifier_text))
                        .or_else(|| {
                            p.children
                                .iter()
                                .find_map(|d| d.child_by_field("declarator").and_then(first_identifier_text))
                        });
                    catch.defs.extend(name);
                }
                out.push(Stmt::Atoms(vec![catch]));
                out.extend(self.body(c.child_by_field("body")));
            }
            _ => {
                if let Some(alias) = c
                    .walk()
                    .into_iter()
                    .find(|n| n.kind == "as_pattern_target")
                    .and_then(first_identifier_text)
                {
                    catch.defs.push(alias);
                }
                out.push(Stmt::Atoms(vec![catch]));
                for b in c.children.iter().filter(|b| b.kind == "block") {
                    self.stmt(b, &mut out);
                }
            }
        }
        out
    }

    fn with_stmt(&mut self, n: &AstNode, out: &mut Vec<Stmt>) {
        for clause in n.children.iter().filter(|c| c.kind == "with_clause") {
            for item in &clause.children {
                let value = item.child_by_field("value").unwrap_or(item);
                let mut cx = Ctx::default();
                let skel = if value.kind == "as_pattern" {
                    if let Some(alias) = value.child_by_field("alias").and_then(first_identifier_text) {
                        cx.defs.push(alias);
                    }
                    match value.children.iter().find(|c| c.field.is_none()) {
                        Some(e) => self.expr(e, &mut cx, 2),
                        None => "_".into(),
                    }
                } else {
                    self.expr(value, &mut cx, 2)
                };
                let (mut atoms, atom) = self.finish_atom(cx, NodeKind::Statement, format!("(with {skel})"), item.span);
                atoms.push(atom);
                out.push(Stmt::Atoms(atoms));
            }
        }
        out.extend(self.body(n.child_by_field("body")));
    }

    // ---- expressions ------------------------------------------------------

    fn is_call(&self, n: &AstNode) -> bool {
        matches!(
            n.kind,
            "call" | "method_invocation" | "object_creation_expression" | "explicit_constructor_invocation" | "call_expression" | "new_expression"
        )
    }

    /// Walks an expression, recording uses/defs/calls into `cx`, and
    /// returns its label skeleton.
    fn expr(&mut self, n: &AstNode, cx: &mut Ctx, depth: usize) -> String {
        let skel = self.expr_inner(n, cx, depth);
        if depth > MAX_SKELETON_DEPTH {
            "_".to_string()
        } else {
            skel
        }
    }

    fn expr_inner(&mut self, n: &AstNode, cx: &mut Ctx, depth: usize) -> String {
        let d = depth + 1;
        if let Some(class) = literal_class(n.kind, n.text_or_empty()) {
            for c in &n.children {
                self.expr(c, cx, d);
            }
            return class.to_string();
        }
        match n.kind {
            "identifier" => {
                let name = n.text_or_empty().to_string();
                if cx.bound.contains(&name) {
                    return "VAR".to_string();
                }
                let class = self.ident_class(&name);
                cx.uses.push(name);
                class.to_string()
            }
            "this" | "super" => "THIS".to_string(),
            "parenthesized_expression" | "condition_clause" | "interpolation" | "keyword_argument" | "list_splat"
            | "dictionary_splat" | "cast_expression" | "expression_list" if n.children.len() == 1
                || n.child_by_field("value").is_some() =>
            {
                let inner = n.child_by_field("value").unwrap_or(&n.children[n.children.len() - 1]);
                self.expr(inner, cx, depth)
            }
            "binary_operator" | "binary_expression" | "boolean_operator" | "comparison_operator" => {
                self.binary(n, cx, d)
            }
            "unary_operator" | "unary_expression" | "not_operator" | "pointer_expression" => {
                let op = canonical_operator(n.operator.as_deref().unwrap_or("?"));
                let arg = n.children.last();
                if op == "&" {
                    // `scanf("%d", &x)` writes through the address.
                    if let Some(v) = arg.and_then(root_var) {
                        cx.weak.push(v);
                    }
                }
                let inner = match arg {
                    Some(a) => self.expr(a, cx, d),
                    None => "_".into(),
                };
                format!("({op} {inner})")
            }
            "update_expression" => {
                let op = n.operator.clone().unwrap_or_else(|| "++".into());
                let target = n.children.first();
                let t = match target {
                    Some(t) => self.target(t, cx, true, d),
                    None => "_".into(),
                };
                format!("({op} {t})")
            }
            "assignment" | "augmented_assignment" | "assignment_expression" => self.assignment(n, cx, d),
            "named_expression" => {
                let v = match n.child_by_field("value") {
                    Some(v) => self.expr(v, cx, d),
                    None => "_".into(),
                };
                if let Some(name) = n.child_by_field("name").and_then(|c| c.text.clone()) {
                    cx.defs.push(name);
                }
                format!("(assign VAR {v})")
            }
            "conditional_expression" | "ternary_expression" => {
                let (c, a, b) = if self.lang == Language::Python {
                    (n.children.get(1), n.children.first(), n.children.get(2))
                } else {
                    (
                        n.child_by_field("condition"),
                        n.child_by_field("consequence"),
                        n.child_by_field("alternative"),
                    )
                };
                let parts: Vec<String> = [c, a, b]
                    .into_iter()
                    .map(|x| x.map(|x| self.expr(x, cx, d)).unwrap_or_else(|| "_".into()))
                    .collect();
                format!("(?: {})", parts.join(" "))
            }
            _ if self.is_call(n) => {
                self.call(n, cx, false);
                "call".to_string()
            }
            "attribute" | "field_access" | "field_expression" => {
                let obj = n
                    .child_by_field("object")
                    .or_else(|| n.child_by_field("argument"))
                    .or_else(|| n.children.first());
                let o = match obj {
                    Some(o) => self.expr(o, cx, d),
                    None => "_".into(),
                };
                format!("(. {o})")
            }
            "subscript" | "array_access" | "subscript_expression" => {
                let (base, rest) = split_subscript(n);
                let b = match base {
                    Some(b) => self.expr(b, cx, d),
                    None => "_".into(),
                };
                let idx: Vec<String> = rest.iter().map(|i| self.expr(i, cx, d)).collect();
                format!("([] {b} {})", idx.join(" "))
            }
            "lambda" | "lambda_expression" => {
                let mut inner = cx.nested();
                inner.defer_calls = true;
                if let Some(p) = n.child_by_field("parameters").or_else(|| n.child_by_field("declarator")) {
                    inner.bound.extend(
                        p.walk()
                            .into_iter()
                            .filter(|x| is_identifier(x.kind))
                            .filter_map(|x| x.text.clone()),
                    );
                } else if let Some(p) = n.children.first().filter(|c| is_identifier(c.kind)) {
                    inner.bound.extend(p.text.clone());
                }
                if let Some(b) = n.child_by_field("body") {
                    self.expr(b, &mut inner, d);
                }
                inner.uses.retain(|u| !inner.bound.contains(u));
                cx.uses.extend(inner.uses);
                "lambda".to_string()
            }
            "list_comprehension" | "set_comprehension" | "dictionary_comprehension" | "generator_expression" => {
                let mut inner = cx.nested();
                for clause in n.children.iter().filter(|c| c.kind == "for_in_clause") {
                    if let Some(l) = clause.child_by_field("left") {
                        inner.bound.extend(
                            l.walk()
                                .into_iter()
                                .filter(|x| is_identifier(x.kind))
                                .filter_map(|x| x.text.clone()),
                        );
                    }
                }
                let mut parts = Vec::new();
                for c in &n.children {
                    match c.kind {
                        "for_in_clause" => {
                            if let Some(r) = c.child_by_field("right") {
                                parts.push(self.expr(r, &mut inner, d));
                            }
                        }
                        "if_clause" => {
                            for x in &c.children {
                                parts.push(format!("(if {})", self.expr(x, &mut inner, d + 1)));
                            }
                        }
                        _ => parts.push(self.expr(c, &mut inner, d)),
                    }
                }
                inner.uses.retain(|u| !inner.bound.contains(u));
                cx.absorb_effects(inner);
                format!("(comp {})", parts.join(" "))
            }
            "list" | "tuple" | "set" | "array_initializer" | "initializer_list" | "dictionary" => {
                let head = if n.kind == "dictionary" { "dict" } else { "list" };
                self.collection(head, n, cx, d)
            }
            "pair" => {
                let parts: Vec<String> = n.children.iter().map(|c| self.expr(c, cx, d)).collect();
                format!("(pair {})", parts.join(" "))
            }
            "nested_function" => "lambda".to_string(),
            _ if n.is_leaf() => {
                if n.kind.ends_with("identifier") || n.kind.ends_with("type") {
                    n.kind.to_string()
                } else {
                    short_kind(n.kind).to_string()
                }
            }
            _ => {
                let parts: Vec<String> = n
                    .children
                    .iter()
                    .filter(|c| c.field != Some("type") && !c.kind.ends_with("_type"))
                    .map(|c| self.expr(c, cx, d))
                    .collect();
                if parts.is_empty() {
                    short_kind(n.kind).to_string()
                } else {
                    format!("({} {})", short_kind(n.kind), parts.join(" "))
                }
            }
        }
    }

    fn collection(&mut self, head: &str, n: &AstNode, cx: &mut Ctx, d: usize) -> String {
        let mut parts: Vec<String> = n.children.iter().map(|c| self.expr(c, cx, d)).collect();
        if parts.len() > MAX_SKELETON_ITEMS {
            parts.truncate(MAX_SKELETON_ITEMS);
            parts.push("..".into());
        }
        if parts.is_empty() {
            format!("({head})")
        } else {
            format!("({head} {})", parts.join(" "))
        }
    }

    fn binary(&mut self, n: &AstNode, cx: &mut Ctx, d: usize) -> String {
        let op = canonical_operator(n.operator.as_deref().unwrap_or("?"));
        // C++ `cin >> a >> b` reads into its right operands.
        if self.lang == Language::Cpp && op == ">>" && leftmost_identifier(n).as_deref() == Some("cin") {
            let mut targets = Vec::new();
            collect_extraction_targets(n, &mut targets);
            for t in targets {
                self.target(t, cx, false, d);
            }
            return "(>> VAR VAR)".to_string();
        }
        let parts: Vec<String> = n.children.iter().map(|c| self.expr(c, cx, d)).collect();
        format!("({op} {})", parts.join(" "))
    }

    fn assignment(&mut self, n: &AstNode, cx: &mut Ctx, d: usize) -> String {
        let op = n.operator.as_deref().unwrap_or("=");
        let augmented = op != "=";
        let value = n.child_by_field("right");
        let v = match value {
            Some(v) => self.expr(v, cx, d),
            None => "_".to_string(),
        };
        let t = match n.child_by_field("left") {
            Some(l) => self.target(l, cx, augmented, d),
            None => "_".to_string(),
        };
        if augmented {
            format!("({} {t} {v})", canonical_operator(op))
        } else {
            format!("(assign {t} {v})")
        }
    }

    /// Assignment target: records definitions (strong for plain names, weak
    /// for element/field stores) and the uses the store needs.
    fn target(&mut self, n: &AstNode, cx: &mut Ctx, read_too: bool, d: usize) -> String {
        match n.kind {
            "identifier" => {
                let name = n.text_or_empty().to_string();
                let class = self.ident_class(&name);
                if read_too {
                    cx.uses.push(name.clone());
                }
                cx.defs.push(name);
                class.to_string()
            }
            "pattern_list" | "tuple_pattern" | "list_pattern" | "tuple" | "list" | "expression_list" => {
                let parts: Vec<String> = n.children.iter().map(|c| self.target(c, cx, read_too, d + 1)).collect();
                format!("(tuple {})", parts.join(" "))
            }
            "parenthesized_expression" | "list_splat_pattern" | "list_splat" | "reference_declarator"
            | "pointer_declarator" | "as_pattern_target" | "structured_binding_declarator"
                if !n.children.is_empty() =>
            {
                if n.children.len() == 1 {
                    self.target(&n.children[0], cx, read_too, d)
                } else {
                    let parts: Vec<String> =
                        n.children.iter().map(|c| self.target(c, cx, read_too, d + 1)).collect();
                    format!("(tuple {})", parts.join(" "))
                }
            }
            "subscript" | "array_access" | "subscript_expression" | "attribute" | "field_access"
            | "field_expression" | "pointer_expression" => {
                let skel = self.expr(n, cx, d);
                if let Some(v) = root_var(n) {
                    cx.weak.push(v);
                }
                skel
            }
            _ => self.expr(n, cx, d),
        }
    }

    fn call_parts<'n>(&self, n: &'n AstNode) -> (Option<String>, Option<&'n AstNode>, Vec<&'n AstNode>) {
        let args_of = |list: Option<&'n AstNode>| -> Vec<&'n AstNode> {
            match list {
                Some(l) if matches!(l.kind, "argument_list" | "arguments") => l.children.iter().collect(),
                Some(l) => vec![l],
                None => Vec::new(),
            }
        };
        match n.kind {
            "call" | "call_expression" => {
                let args = args_of(n.child_by_field("arguments"));
                match n.child_by_field("function") {
                    Some(f) if is_identifier(f.kind) => (f.text.clone(), None, args),
                    Some(f) if matches!(f.kind, "attribute" | "field_expression") => {
                        let name = f
                            .child_by_field("attribute")
                            .or_else(|| f.child_by_field("field"))
                            .and_then(|a| a.text.clone());
                        let recv = f.child_by_field("object").or_else(|| f.child_by_field("argument"));
                        (name, recv, args)
                    }
                    Some(f) if matches!(f.kind, "qualified_identifier" | "template_function") => {
                        let name = f
                            .walk()
                            .into_iter()
                            .filter(|x| x.kind == "identifier")
                            .last()
                            .and_then(|x| x.text.clone());
                        (name, None, args)
                    }
                    Some(f) => (None, Some(f), args),
                    None => (None, None, args),
                }
            }
            "method_invocation" => (
                n.child_by_field("name").and_then(|x| x.text.clone()),
                n.child_by_field("object"),
                args_of(n.child_by_field("arguments")),
            ),
            "object_creation_expression" | "new_expression" => {
                let name = n.child_by_field("type").and_then(|t| {
                    t.walk()
                        .into_iter()
                        .filter(|x| x.is_leaf())
                        .find(|x| x.kind.ends_with("identifier"))
                        .and_then(|x| x.text.clone())
                });
                (name, None, args_of(n.child_by_field("arguments")))
            }
            "explicit_constructor_invocation" => (
                n.child_by_field("constructor").map(|c| c.text.clone().unwrap_or_else(|| c.kind.to_string())),
                n.child_by_field("object"),
                args_of(n.child_by_field("arguments")),
            ),
            _ => (None, None, n.children.iter().collect()),
        }
    }

    /// Emits a call-site atom for `n` (after any calls nested in it). When
    /// `as_statement` the atom is the statement itself and defines nothing.
    fn call(&mut self, n: &AstNode, cx: &mut Ctx, as_statement: bool) {
        let (name, receiver, args) = self.call_parts(n);
        let mut inner = cx.nested();
        if let Some(r) = receiver {
            self.expr(r, &mut inner, 3);
            if let Some(v) = root_var(r) {
                inner.weak.push(v);
            }
        }
        for a in &args {
            self.expr(a, &mut inner, 3);
        }
        if cx.defer_calls {
            cx.uses.extend(inner.uses);
            return;
        }
        let mut defs = inner.defs;
        if !as_statement {
            let t = self.temp();
            cx.uses.push(t.clone());
            defs.push(t);
        }
        cx.calls.extend(inner.calls);
        cx.calls.push(Atom {
            kind: NodeKind::CallSite,
            label: NodeLabel::operation("call"),
            span: n.span,
            defs: dedup(defs),
            weak_defs: dedup(inner.weak),
            uses: dedup(inner.uses),
            callee: name.map(|name| Callee {
                name,
                arity: Some(args.len()),
            }),
        });
    }
}

fn split_subscript(n: &AstNode) -> (Option<&AstNode>, Vec<&AstNode>) {
    let base = n
        .child_by_field("value")
        .or_else(|| n.child_by_field("array"))
        .or_else(|| n.child_by_field("argument"));
    let rest = n
        .children
        .iter()
        .filter(|c| !std::ptr::eq(*c, base.map_or(std::ptr::null(), |b| b as *const _)))
        .flat_map(|c| {
            if c.kind == "subscript_argument_list" {
                c.children.iter().collect::<Vec<_>>()
            } else {
                vec![c]
            }
        })
        .collect();
    (base, rest)
}

/// The variable an lvalue ultimately stores into (`a` for `a[i].f`).
fn root_var(n: &AstNode) -> Option<String> {
    match n.kind {
        "identifier" => n.text.clone(),
        "subscript" | "array_access" | "subscript_expression" => split_subscript(n).0.and_then(root_var),
        "attribute" | "field_access" => n.child_by_field("object").and_then(root_var),
        "field_expression" => n.child_by_field("argument").and_then(root_var),
        "parenthesized_expression" | "pointer_expression" => n.children.last().and_then(root_var),
        _ => None,
    }
}

fn first_identifier_text(n: &AstNode) -> Option<String> {
    n.walk()
        .into_iter()
        .find(|x| is_identifier(x.kind))
        .and_then(|x| x.text.clone())
}

fn leftmost_identifier(n: &AstNode) -> Option<String> {
    let mut cur = n;
    while cur.kind == "binary_expression" {
        cur = cur.children.first()?;
    }
    cur.text.clone()
}

fn collect_extraction_targets<'a>(n: &'a AstNode, out: &mut Vec<&'a AstNode>) {
    if n.kind == "binary_expression" && n.operator.as_deref() == Some(">>") {
        if let Some(l) = n.children.first() {
            collect_extraction_targets(l, out);
        }
        if let Some(r) = n.children.get(1) {
            out.push(r);
        }
    }
}

fn collect_strong_defs(stmts: &[Stmt], params: &[String]) -> HashSet<String> {
    let mut out: HashSet<String> = params.iter().cloned().collect();
    visit_atoms(stmts, &mut |a| out.extend(a.defs.iter().cloned()));
    out
}

/// Weak definitions only make sense for locals; receivers such as `System`
/// or `Math` would otherwise chain unrelated statements together.
fn filter_weak_defs(stmts: &mut [Stmt], strong: &HashSet<String>) {
    visit_atoms_mut(stmts, &mut |a| a.weak_defs.retain(|v| strong.contains(v)));
}

pub(crate) fn visit_atoms(stmts: &[Stmt], f: &mut dyn FnMut(&Atom)) {
    for s in stmts {
        match s {
            Stmt::Atoms(atoms) | Stmt::Jump { atoms, .. } => atoms.iter().for_each(&mut *f),
            Stmt::If { head, then, els } => {
                head.iter().for_each(&mut *f);
                visit_atoms(then, f);
                visit_atoms(els, f);
            }
            Stmt::Loop {
                head,
                body,
                update,
                orelse,
                ..
            } => {
                head.iter().for_each(&mut *f);
                visit_atoms(body, f);
                visit_atoms(update, f);
                visit_atoms(orelse, f);
            }
            Stmt::Switch { head, cases, .. } => {
                head.iter().for_each(&mut *f);
                cases.iter().for_each(|c| visit_atoms(c, f));
            }
            Stmt::Try {
                head,
                body,
                handlers,
                orelse,
                finally,
            } => {
                head.iter().for_each(&mut *f);
                visit_atoms(body, f);
                handlers.iter().for_each(|h| visit_atoms(h, f));
                visit_atoms(orelse, f);
                visit_atoms(finally, f);
            }
        }
    }
}

fn visit_atoms_mut(stmts: &mut [Stmt], f: &mut dyn FnMut(&mut Atom)) {
    for s in stmts {
        match s {
            Stmt::Atoms(atoms) | Stmt::Jump { atoms, .. } => atoms.iter_mut().for_each(&mut *f),
            Stmt::If { head, then, els } => {
                head.iter_mut().for_each(&mut *f);
                visit_atoms_mut(then, f);
                visit_atoms_mut(els, f);
            }
            Stmt::Loop {
                head,
                body,
                update,
                orelse,
                ..
            } => {
                head.iter_mut().for_each(&mut *f);
                visit_atoms_mut(body, f);
                visit_atoms_mut(update, f);
                visit_atoms_mut(orelse, f);
            }
            Stmt::Switch { head, cases, .. } => {
                head.iter_mut().for_each(&mut *f);
                cases.iter_mut().for_each(|c| visit_atoms_mut(c, f));
            }
            Stmt::Try {
                head,
                body,
                handlers,
                orelse,
                finally,
            } => {
                head.iter_mut().for_each(&mut *f);
                visit_atoms_mut(body, f);
                handlers.iter_mut().for_each(|h| visit_atoms_mut(h, f));
                visit_atoms_mut(orelse, f);
                visit_atoms_mut(finally, f);
            }
        }
    }
}
