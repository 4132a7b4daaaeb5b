use serde::{Deserialize, Serialize};

use super::{check_canonical, describe_violations, is_tf_cover_mask, triangle_components, TwoEdgeCover};
use crate::error::{Error, Result};
use crate::graph::connectivity::{lowlink, Host};
use crate::graph::MultiGraph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonStats {
    pub iterations: usize,
    pub moves_examined: u64,
}

/// `(edges, components, bridges, cut vertices inside 2EC components)`.
type Objective = (usize, usize, usize, usize);

fn objective(host: &Host, mask: &[bool]) -> Objective {
    let ll = lowlink(host, mask);
    let edges = mask.iter().filter(|&&b| b).count();
    let mut complex = vec![false; ll.ncomp];
    let mut bridges = 0;
    for i in 0..host.m() {
        if mask[i] && ll.is_bridge[i] {
            bridges += 1;
            complex[ll.comp[host.ends[i].0]] = true;
        }
    }
    let cuts = (0..host.n).filter(|&v| ll.is_cut[v] && !complex[ll.comp[v]]).count();
    (edges, ll.ncomp, bridges, cuts)
}

/// Local search with swaps `|F_A| <= |F_R| <= 2` taking the first move that
/// improves the lexicographic objective. Fails with `NotCanonical` if the
/// local optimum still violates the canonical conditions.
pub fn canonicalize(g: &MultiGraph, h: &TwoEdgeCover) -> Result<(TwoEdgeCover, CanonStats)> {
    let host = Host::new(g);
    let mut mask = host.mask(&h.edges);
    if !is_tf_cover_mask(&host, &mask) {
        return Err(Error::Invariant("canonicalize needs a triangle-free 2-edge cover".into()));
    }
    let mut stats = CanonStats::default();
    let limit = 4 * host.m() * host.m() + 16;
    loop {
        let cur = objective(&host, &mask);
        match improving_move(&host, &mask, cur, &mut stats) {
            Some(next) => {
                debug_assert!(is_tf_cover_mask(&host, &next));
                mask = next;
                stats.iterations += 1;
                if stats.iterations > limit {
                    return Err(Error::Invariant("canonicalize exceeded its iteration bound".into()));
                }
            }
            None => break,
        }
    }
    let out = TwoEdgeCover::from_mask(&host, &mask, h.certified_minimum);
    let v = check_canonical(&out);
    if !v.is_empty() {
        return Err(Error::NotCanonical(describe_violations(&v)));
    }
    Ok((out, stats))
}

fn improving_move(host: &Host, mask: &[bool], cur: Objective, stats: &mut CanonStats) -> Option<Vec<bool>> {
    let in_h: Vec<usize> = (0..host.m()).filter(|&i| mask[i]).collect();
    let out_h: Vec<usize> = (0..host.m()).filter(|&i| !mask[i] && host.ends[i].0 != host.ends[i].1).collect();
    let mut trial = mask.to_vec();
    for r in 1..=2usize {
        let mut removals: Vec<Vec<usize>> = Vec::new();
        if r == 1 {
            removals.extend(in_h.iter().map(|&e| vec![e]));
        } else {
            for (a, &x) in in_h.iter().enumerate() {
                for &y in &in_h[a + 1..] {
                    removals.push(vec![x, y]);
                }
            }
        }
        for fr in removals {
            for &e in &fr {
                trial[e] = false;
            }
            if let Some(next) = best_addition(host, &mut trial, &out_h, r, cur, stats) {
                return Some(next);
            }
            for &e in &fr {
                trial[e] = true;
            }
        }
    }
    None
}

/// Tries additions `F_A` with `|F_A| <= r` to the reduced cover `trial`,
/// restricted to edge sets touching every deficit vertex and triangle.
fn best_addition(
    host: &Host,
    trial: &mut [bool],
    out_h: &[usize],
    r: usize,
    cur: Objective,
    stats: &mut CanonStats,
) -> Option<Vec<bool>> {
    let deg = host.degrees(trial);
    let mut need = vec![0usize; host.n];
    for v in 0..host.n {
        need[v] = 2usize.saturating_sub(deg[v]);
    }
    let total_need: usize = need.iter().sum();
    if total_need > 2 * r {
        return None;
    }
    let tris = triangle_components(host, trial);
    let mut tri_of = vec![usize::MAX; host.n];
    for (k, t) in tris.iter().enumerate() {
        for &v in t {
            tri_of[v] = k;
        }
    }
    let obligations = total_need > 0 || !tris.is_empty();
    let satisfied = |fa: &[usize]| {
        let mut need = need.clone();
        let mut touched = vec![false; tris.len()];
        for &e in fa {
            let (u, v) = host.ends[e];
            need[u] = need[u].saturating_sub(1);
            need[v] = need[v].saturating_sub(1);
            for x in [u, v] {
                if tri_of[x] != usize::MAX {
                    touched[tri_of[x]] = true;
                }
            }
        }
        need.iter().all(|&x| x == 0) && touched.iter().all(|&t| t)
    };
    let mut check = |trial: &mut [bool], fa: &[usize]| -> Option<Vec<bool>> {
        stats.moves_examined += 1;
        for &e in fa {
            trial[e] = true;
        }
        let ok = is_tf_cover_mask(host, trial) && objective(host, trial) < cur;
        let result = ok.then(|| trial.to_vec());
        for &e in fa {
            trial[e] = false;
        }
        result
    };
    if !obligations {
        return check(trial, &[]);
    }
    let touches = |e: usize| {
        let (u, v) = host.ends[e];
        need[u] > 0 || need[v] > 0 || tri_of[u] != usize::MAX || tri_of[v] != usize::MAX
    };
    let first: Vec<usize> = out_h.iter().copied().filter(|&e| touches(e)).collect();
    for &e in &first {
        if satisfied(&[e]) {
            if let Some(x) = check(trial, &[e]) {
                return Some(x);
            }
        }
    }
    if r < 2 {
        return None;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &x in &first {
        for &y in out_h {
            if y == x || (touches(y) && y < x) {
                continue;
            }
            let p = (x.min(y), x.max(y));
            if satisfied(&[p.0, p.1]) {
                pairs.push(p);
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    for (x, y) in pairs {
        if let Some(m) = check(trial, &[x, y]) {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, EdgeSubset};

    #[test]
    fn chord_is_removed() {
        // C4 plus chord as the whole graph
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let h = TwoEdgeCover::new(&g, g.edge_ids(), false);
        let (c, stats) = canonicalize(&g, &h).unwrap();
        assert_eq!(c.len(), 4);
        assert!(!c.edges.contains(EdgeId(4)));
        assert_eq!(stats.iterations, 1);
    }

    #[test]
    fn canonical_input_is_untouched() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let h = TwoEdgeCover::new(&g, g.edge_ids(), true);
        let (c, stats) = canonicalize(&g, &h).unwrap();
        assert_eq!(c.edges, h.edges);
        assert_eq!(stats.iterations, 0);
    }

    #[test]
    fn two_squares_merge_into_an_eight_cycle() {
        // squares 0-1-2-3 and 4-5-6-7, crossing edges 1-4 and 2-7
        let g = MultiGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (1, 4), (2, 7)],
        )
        .unwrap();
        let h: EdgeSubset = (0..8).map(EdgeId).collect();
        let h = TwoEdgeCover::new(&g, h, true);
        let (c, _) = canonicalize(&g, &h).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(c.component_count(), 1);
        assert!(c.is_bridgeless());
    }
}
