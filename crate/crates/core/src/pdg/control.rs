//! Control dependence from the post-dominator tree.

use super::cfg::{Cfg, ENTRY, EXIT};

/// Immediate post-dominators (iterative Cooper–Harvey–Kennedy on the
/// reversed graph). `None` for exit and for nodes that cannot reach exit.
pub fn post_dominators(cfg: &Cfg) -> Vec<Option<usize>> {
    let n = cfg.len();
    let preds = cfg.preds();
    // Postorder of the reversed graph from exit.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack = vec![(EXIT, 0usize)];
    seen[EXIT] = true;
    while let Some(&mut (node, ref mut i)) = stack.last_mut() {
        if let Some(&p) = preds[node].get(*i) {
            *i += 1;
            if !seen[p] {
                seen[p] = true;
                stack.push((p, 0));
            }
        } else {
            order.push(node);
            stack.pop();
        }
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &node) in order.iter().enumerate() {
        rank[node] = i;
    }
    let mut ipdom: Vec<Option<usize>> = vec![None; n];
    ipdom[EXIT] = Some(EXIT);
    let intersect = |ipdom: &[Option<usize>], mut a: usize, mut b: usize| {
        while a != b {
            while rank[a] < rank[b] {
                a = ipdom[a].expect("processed");
            }
            while rank[b] < rank[a] {
                b = ipdom[b].expect("processed");
            }
        }
        a
    };
    let mut changed = true;
    while changed {
        changed = false;
        for &node in order.iter().rev() {
            if node == EXIT {
                continue;
            }
            let mut new = None;
            for &(s, _) in &cfg.succ[node] {
                if ipdom[s].is_none() {
                    continue;
                }
                new = Some(match new {
                    None => s,
                    Some(cur) => intersect(&ipdom, s, cur),
                });
            }
            if new.is_some() && ipdom[node] != new {
                ipdom[node] = new;
                changed = true;
            }
        }
    }
    ipdom[EXIT] = None;
    ipdom
}

/// Control-dependence pairs `(controller, dependent)`, sorted, over a CFG
/// where every node reaches exit. Entry is given an extra edge to exit so
/// top-level nodes depend on it.
pub fn control_dependencies(cfg: &Cfg) -> Vec<(usize, usize)> {
    let mut aug = cfg.clone();
    if !aug.succ[ENTRY].iter().any(|&(s, _)| s == EXIT) {
        aug.succ[ENTRY].push((EXIT, super::cfg::Branch::Synthetic));
    }
    let ipdom = post_dominators(&aug);
    let mut out = Vec::new();
    for (a, succ) in aug.succ.iter().enumerate() {
        for &(b, _) in succ {
            if b == EXIT || ipdom[a].is_none() {
                continue;
            }
            let stop = ipdom[a];
            let mut cur = Some(b);
            // Walk b's post-dominator chain up to (excluding) ipdom(a).
            while let Some(c) = cur {
                if Some(c) == stop || c == EXIT {
                    break;
                }
                out.push((a, c));
                cur = ipdom[c];
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Whether every path from `z` to exit passes through `y`.
    fn postdominates(cfg: &Cfg, y: usize, z: usize) -> bool {
        if y == z {
            return true;
        }
        let mut seen = vec![false; cfg.len()];
        let mut stack = vec![z];
        while let Some(n) = stack.pop() {
            if n == y || std::mem::replace(&mut seen[n], true) {
                continue;
            }
            if n == EXIT {
                return false;
            }
            stack.extend(cfg.succ[n].iter().map(|&(s, _)| s));
        }
        true
    }

    /// y depends on x iff some successor of x is post-dominated by y while
    /// y does not strictly post-dominate x.
    fn oracle(cfg: &Cfg) -> Vec<(usize, usize)> {
        let mut aug = cfg.clone();
        aug.succ[ENTRY].push((EXIT, super::super::cfg::Branch::Synthetic));
        let mut out = Vec::new();
        for x in 0..aug.len() {
            for y in 0..aug.len() {
                if y == EXIT {
                    continue;
                }
                let strictly = x != y && postdominates(&aug, y, x);
                let via_succ = aug.succ[x].iter().any(|&(s, _)| postdominates(&aug, y, s));
                if via_succ && !strictly {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn random_cfg(n: usize, raw: &[(usize, usize)]) -> Cfg {
        let edges: Vec<_> = raw
            .iter()
            .map(|&(a, b)| (a % n, b % n))
            .filter(|&(a, b)| a != EXIT && b != ENTRY)
            .collect();
        let mut cfg = Cfg::from_edges(n, &edges);
        cfg.close();
        cfg
    }

    #[test]
    fn diamond() {
        // 0 -> 2 -> {3,4} -> 5 -> 1
        let cfg = Cfg::from_edges(6, &[(0, 2), (2, 3), (2, 4), (3, 5), (4, 5), (5, 1)]);
        assert_eq!(control_dependencies(&cfg), vec![(0, 2), (0, 5), (2, 3), (2, 4)]);
    }

    #[test]
    fn loop_predicate_depends_on_itself() {
        // 0 -> 2 (while) -> 3 -> 2 ; 2 -> 1
        let cfg = Cfg::from_edges(4, &[(0, 2), (2, 3), (3, 2), (2, 1)]);
        let cd = control_dependencies(&cfg);
        assert!(cd.contains(&(2, 2)));
        assert!(cd.contains(&(2, 3)));
        assert!(cd.contains(&(0, 2)));
    }

    proptest! {
        #[test]
        fn matches_postdominance_oracle(
            n in 2usize..=8,
            raw in proptest::collection::vec((0usize..8, 0usize..8), 0..20),
        ) {
            let cfg = random_cfg(n, &raw);
            prop_assert_eq!(control_dependencies(&cfg), oracle(&cfg));
        }
    }
}
