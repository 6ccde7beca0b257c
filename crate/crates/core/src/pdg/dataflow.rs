//! Data dependence by reaching definitions.

use std::collections::{BTreeSet, HashMap};

use super::cfg::Cfg;

/// Per-node variable facts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefUse {
    pub defs: Vec<String>,
    pub weak_defs: Vec<String>,
    pub uses: Vec<String>,
}

/// `(def_node, use_node)` pairs, sorted: a definition of some variable at
/// `def_node` reaches `use_node` along a path on which no node strongly
/// redefines it, and `use_node` reads that variable. Weak definitions
/// generate without killing. Loop-carried self-dependences are kept.
pub fn data_dependencies(cfg: &Cfg, facts: &[DefUse]) -> Vec<(usize, usize)> {
    let n = cfg.len();
    // Index every (node, var) definition.
    let mut defs: Vec<(usize, &str)> = Vec::new();
    for (node, f) in facts.iter().enumerate().take(n) {
        for v in f.defs.iter().chain(&f.weak_defs) {
            if !defs.contains(&(node, v.as_str())) {
                defs.push((node, v.as_str()));
            }
        }
    }
    let mut by_var: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, &(_, v)) in defs.iter().enumerate() {
        by_var.entry(v).or_default().push(i);
    }
    let gen: Vec<BTreeSet<usize>> = (0..n)
        .map(|node| defs.iter().enumerate().filter(|(_, d)| d.0 == node).map(|(i, _)| i).collect())
        .collect();
    let kill: Vec<BTreeSet<usize>> = (0..n)
        .map(|node| {
            facts
                .get(node)
                .map(|f| {
                    f.defs
                        .iter()
                        .flat_map(|v| by_var[v.as_str()].iter().copied())
                        .filter(|&i| defs[i].0 != node)
                        .collect()
                })
                .unwrap_or_default()
        })
        .collect();
    let preds = cfg.preds();
    let mut inn: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut out: Vec<BTreeSet<usize>> = gen.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for node in 0..n {
            let new_in: BTreeSet<usize> = preds[node].iter().flat_map(|&p| out[p].iter().copied()).collect();
            let mut new_out: BTreeSet<usize> = new_in.difference(&kill[node]).copied().collect();
            new_out.extend(gen[node].iter().copied());
            if new_out != out[node] {
                out[node] = new_out;
                changed = true;
            }
            inn[node] = new_in;
        }
    }
    let mut result = Vec::new();
    for (node, f) in facts.iter().enumerate().take(n) {
        for v in &f.uses {
            let Some(ids) = by_var.get(v.as_str()) else { continue };
            for &i in ids {
                if inn[node].contains(&i) {
                    result.push((defs[i].0, node));
                }
            }
        }
    }
    result.sort_unstable();
    result.dedup();
    result
}
