//! Assignment-based upper bound with local-search refinement.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::lap::assign;
use super::{prepare_pair, preserved_edges, EditScript, NodeMapping, Prepared, Solver};
use crate::semgraph::SemanticGraph;

/// Upper bound on the edit distance; symmetric because both directions are
/// solved and the cheaper one kept.
pub fn ged_approx(g1: &SemanticGraph, g2: &SemanticGraph) -> EditScript {
    let fwd = one_direction(g1, g2);
    let bwd = one_direction(g2, g1);
    if bwd.total_cost < fwd.total_cost {
        bwd.reversed(g2, g1)
    } else {
        fwd
    }
}

fn one_direction(g1: &SemanticGraph, g2: &SemanticGraph) -> EditScript {
    let (p1, p2, _) = prepare_pair(g1, g2);
    let mut image = initial_assignment(&p1, &p2);
    refine(&p1, &p2, &mut image);
    EditScript::from_mapping(g1, g2, NodeMapping::from_images(&image), Solver::Approx)
}

/// Incident edges as (direction, kind bit, neighbour label), sorted.
fn signature(p: &Prepared, u: usize) -> Vec<(u8, u8, u32)> {
    let mut sig: Vec<_> = p.incident[u]
        .iter()
        .flat_map(|&e| {
            let (s, d, bit) = p.edges[e];
            let mut out = Vec::with_capacity(2);
            if s == u {
                out.push((0, bit, p.label[d]));
            }
            if d == u {
                out.push((1, bit, p.label[s]));
            }
            out
        })
        .collect();
    sig.sort_unstable();
    sig
}

fn multiset_distance(a: &[(u8, u8, u32)], b: &[(u8, u8, u32)]) -> i64 {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (a.len() + b.len() - 2 * common) as i64
}

pub(crate) fn classes(p: &Prepared) -> BTreeMap<u32, Vec<usize>> {
    let mut m: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (u, &l) in p.label.iter().enumerate() {
        m.entry(l).or_default().push(u);
    }
    m
}

/// Per label class, matches as many nodes as possible while minimizing the
/// neighbourhood mismatch.
pub(crate) fn initial_assignment(p1: &Prepared, p2: &Prepared) -> Vec<Option<usize>> {
    let mut image = vec![None; p1.n];
    let c2 = classes(p2);
    let sig1: Vec<_> = (0..p1.n).map(|u| signature(p1, u)).collect();
    let sig2: Vec<_> = (0..p2.n).map(|w| signature(p2, w)).collect();
    for (label, rows) in classes(p1) {
        let Some(cols) = c2.get(&label) else { continue };
        if rows.len() <= cols.len() {
            let cost: Vec<Vec<i64>> = rows
                .iter()
                .map(|&u| cols.iter().map(|&w| multiset_distance(&sig1[u], &sig2[w])).collect())
                .collect();
            for (r, c) in assign(&cost).into_iter().enumerate() {
                image[rows[r]] = Some(cols[c]);
            }
        } else {
            let cost: Vec<Vec<i64>> = cols
                .iter()
                .map(|&w| rows.iter().map(|&u| multiset_distance(&sig1[u], &sig2[w])).collect())
                .collect();
            for (c, r) in assign(&cost).into_iter().enumerate() {
                image[rows[r]] = Some(cols[c]);
            }
        }
    }
    image
}

/// Preserved g1 edges among those touching any of `nodes`.
fn local_preserved(p1: &Prepared, p2: &Prepared, image: &[Option<usize>], nodes: &[usize]) -> usize {
    let mut seen: Vec<usize> = nodes.iter().flat_map(|&u| p1.incident[u].iter().copied()).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.into_iter()
        .filter(|&e| {
            let (u, v, bit) = p1.edges[e];
            match (image[u], image[v]) {
                (Some(a), Some(b)) => p2.mask(a, b) & bit != 0,
                _ => false,
            }
        })
        .count()
}

/// First-improvement local search over swaps within label classes, until
/// no move keeps more edges.
pub(crate) fn refine(p1: &Prepared, p2: &Prepared, image: &mut [Option<usize>]) {
    let classes1 = classes(p1);
    let classes2 = classes(p2);
    let mut used = vec![false; p2.n];
    for w in image.iter().flatten() {
        used[*w] = true;
    }
    let mut improved = true;
    while improved {
        improved = false;
        for (label, members) in &classes1 {
            let targets = classes2.get(label).map(Vec::as_slice).unwrap_or_default();
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    let (a, b) = (members[i], members[j]);
                    if image[a].is_none() && image[b].is_none() {
                        continue;
                    }
                    let before = local_preserved(p1, p2, image, &[a, b]);
                    image.swap(a, b);
                    if local_preserved(p1, p2, image, &[a, b]) > before {
                        improved = true;
                    } else {
                        image.swap(a, b);
                    }
                }
                let a = members[i];
                let Some(cur) = image[a] else { continue };
                for &w in targets {
                    if used[w] {
                        continue;
                    }
                    let before = local_preserved(p1, p2, image, &[a]);
                    image[a] = Some(w);
                    if local_preserved(p1, p2, image, &[a]) > before {
                        used[cur] = false;
                        used[w] = true;
                        improved = true;
                        break;
                    }
                    image[a] = Some(cur);
                }
            }
        }
    }
    debug_assert!(preserved_edges(p1, p2, image) <= p1.edges.len());
}
