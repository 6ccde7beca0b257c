//! Tree edit distance similarity over syntax trees.

use crate::error::Result;
use crate::frontend::{parse, AstNode, SourceUnit};

/// Node label used for tree comparison: grammar kind plus operator. With
/// `name_sensitive`, leaf text (identifier names, literal values) is kept.
fn node_label(n: &AstNode, name_sensitive: bool) -> String {
    let mut s = n.kind.to_string();
    if let Some(op) = &n.operator {
        s.push(':');
        s.push_str(op);
    }
    if name_sensitive && n.children.is_empty() {
        if let Some(t) = &n.text {
            s.push('=');
            s.push_str(t);
        }
    }
    s
}

/// Postorder arrays for Zhang–Shasha.
struct Flat {
    labels: Vec<String>,
    /// Leftmost leaf descendant (postorder index) of each node.
    lml: Vec<usize>,
    keyroots: Vec<usize>,
}

fn flatten(root: &AstNode, name_sensitive: bool) -> Flat {
    let mut labels = Vec::new();
    let mut lml = Vec::new();
    // Iterative postorder: (node, visited-children flag).
    let mut stack: Vec<(&AstNode, bool)> = vec![(root, false)];
    while let Some((n, expanded)) = stack.pop() {
        if expanded || n.children.is_empty() {
            let idx = labels.len();
            labels.push(node_label(n, name_sensitive));
            let leftmost = if n.children.is_empty() {
                idx
            } else {
                // Children were emitted in order; the subtree starts
                // `size - 1` slots back.
                idx + 1 - n.size()
            };
            lml.push(leftmost);
        } else {
            stack.push((n, true));
            for c in n.children.iter().rev() {
                stack.push((c, false));
            }
        }
    }
    let mut keyroots = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in (0..labels.len()).rev() {
        if seen.insert(lml[i]) {
            keyroots.push(i);
        }
    }
    keyroots.sort_unstable();
    Flat { labels, lml, keyroots }
}

/// Ordered tree edit distance with unit insert, delete and relabel costs.
pub fn tree_edit_distance(a: &AstNode, b: &AstNode, name_sensitive: bool) -> usize {
    let t1 = flatten(a, name_sensitive);
    let t2 = flatten(b, name_sensitive);
    let (n, m) = (t1.labels.len(), t2.labels.len());
    let mut td = vec![0usize; n * m];
    let mut fd = vec![0usize; (n + 1) * (m + 1)];
    for &i in &t1.keyroots {
        for &j in &t2.keyroots {
            let (li, lj) = (t1.lml[i], t2.lml[j]);
            let w = j - lj + 2;
            let at = |x: usize, y: usize| x * w + y;
            // fd over forests t1[li..=x-1], t2[lj..=y-1], offset by one.
            fd[at(0, 0)] = 0;
            for x in 1..=i - li + 1 {
                fd[at(x, 0)] = fd[at(x - 1, 0)] + 1;
            }
            for y in 1..=j - lj + 1 {
                fd[at(0, y)] = fd[at(0, y - 1)] + 1;
            }
            for x in 1..=i - li + 1 {
                let di = li + x - 1;
                for y in 1..=j - lj + 1 {
                    let dj = lj + y - 1;
                    let del = fd[at(x - 1, y)] + 1;
                    let ins = fd[at(x, y - 1)] + 1;
                    if t1.lml[di] == li && t2.lml[dj] == lj {
                        let rel = fd[at(x - 1, y - 1)] + usize::from(t1.labels[di] != t2.labels[dj]);
                        let v = del.min(ins).min(rel);
                        fd[at(x, y)] = v;
                        td[di * m + dj] = v;
                    } else {
                        let px = t1.lml[di] - li;
                        let py = t2.lml[dj] - lj;
                        let sub = fd[at(px, py)] + td[di * m + dj];
                        fd[at(x, y)] = del.min(ins).min(sub);
                    }
                }
            }
        }
    }
    td[(n - 1) * m + (m - 1)]
}

/// `max(0, 1 - dist / max(|T1|, |T2|))`.
pub fn tsed_trees(a: &AstNode, b: &AstNode, name_sensitive: bool) -> f64 {
    let d = tree_edit_distance(a, b, name_sensitive) as f64;
    let size = a.size().max(b.size()) as f64;
    (1.0 - d / size).max(0.0)
}

pub fn tsed(a: &SourceUnit, b: &SourceUnit, name_sensitive: bool) -> Result<f64> {
    Ok(tsed_trees(&parse(a)?, &parse(b)?, name_sensitive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{Language, Span};
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn node(kind: &'static str, children: Vec<AstNode>) -> AstNode {
        let mut n = AstNode::synthetic(kind, Span::default(), children);
        if n.children.is_empty() {
            n.text = Some(kind.to_string());
        }
        n
    }

    /// Forest edit distance by the textbook recursion on rightmost roots.
    fn brute(f: &[&AstNode], g: &[&AstNode], memo: &mut HashMap<(Vec<usize>, Vec<usize>), usize>) -> usize {
        let key = (
            f.iter().map(|n| *n as *const _ as usize).collect::<Vec<_>>(),
            g.iter().map(|n| *n as *const _ as usize).collect::<Vec<_>>(),
        );
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let size = |xs: &[&AstNode]| xs.iter().map(|n| n.size()).sum::<usize>();
        let v = match (f.split_last(), g.split_last()) {
            (None, _) => size(g),
            (_, None) => size(f),
            (Some((v, fr)), Some((w, gr))) => {
                let mut f_del: Vec<&AstNode> = fr.to_vec();
                f_del.extend(v.children.iter());
                let mut g_ins: Vec<&AstNode> = gr.to_vec();
                g_ins.extend(w.children.iter());
                let vc: Vec<&AstNode> = v.children.iter().collect();
                let wc: Vec<&AstNode> = w.children.iter().collect();
                let del = brute(&f_del, g, memo) + 1;
                let ins = brute(f, &g_ins, memo) + 1;
                let rel = brute(fr, gr, memo) + brute(&vc, &wc, memo) + usize::from(v.kind != w.kind);
                del.min(ins).min(rel)
            }
        };
        memo.insert(key, v);
        v
    }

    fn arb_tree() -> impl Strategy<Value = AstNode> {
        let leaf = prop_oneof![Just("a"), Just("b"), Just("c")].prop_map(|k| node(k, vec![]));
        leaf.prop_recursive(3, 12, 3, |inner| {
            (prop_oneof![Just("a"), Just("b"), Just("p")], proptest::collection::vec(inner, 1..3))
                .prop_map(|(k, cs)| node(k, cs))
        })
    }

    #[test]
    fn single_versus_two_nodes() {
        let a = node("a", vec![]);
        let b = node("a", vec![node("b", vec![])]);
        assert_eq!(tree_edit_distance(&a, &b, false), 1);
        assert_eq!(tsed_trees(&a, &b, false), 0.5);
    }

    #[test]
    fn classic_example() {
        // f(d(a, c(b)), e) vs f(c(d(a, b)), e): distance 2
        let t1 = node("f", vec![node("d", vec![node("a", vec![]), node("c", vec![node("b", vec![])])]), node("e", vec![])]);
        let t2 = node("f", vec![node("c", vec![node("d", vec![node("a", vec![]), node("b", vec![])])]), node("e", vec![])]);
        assert_eq!(tree_edit_distance(&t1, &t2, false), 2);
    }

    #[test]
    fn data_flow_variants_look_identical() {
        let a = SourceUnit::new(Language::Python, "def f():\n    x = 1\n    y = x + 1\n    z = x + 1\n", "a");
        let b = SourceUnit::new(Language::Python, "def f():\n    x = 1\n    y = x + 1\n    z = y + 1\n", "b");
        assert_eq!(tsed(&a, &b, false).unwrap(), 1.0);
        assert!(tsed(&a, &b, true).unwrap() < 1.0);
    }

    proptest! {
        #[test]
        fn matches_forest_recursion(a in arb_tree(), b in arb_tree()) {
            let d = tree_edit_distance(&a, &b, false);
            prop_assert_eq!(d, brute(&[&a], &[&b], &mut HashMap::new()));
            prop_assert_eq!(d, tree_edit_distance(&b, &a, false));
        }
    }
}
