use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::multigraph::{EdgeSubset, MultiGraph, Vertex};
use crate::oracle;

/// Longest candidate cycle considered, whatever `max_vertices` allows.
pub const CYCLE_CAP: usize = 8;
const SEARCH_BUDGET: u64 = 400_000;
const ORACLE_CANDIDATES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Justification {
    /// Vertices whose whole neighbourhood lies inside `V(C)`; any solution
    /// needs at least `forced` edges inside `V(C)` to give them degree 2.
    ForcedDegree { anchors: Vec<Vertex>, forced: usize },
    /// Exact minimum over all 2-ECSS of the edges inside `V(C)`.
    Exact { min_inside: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractibleCertificate {
    pub vertices: Vec<Vertex>,
    pub edges: EdgeSubset,
    pub justification: Justification,
}

/// Searches short cycles for one that is provably `alpha`-contractible.
/// `None` means nothing was certified, not that nothing exists.
pub fn find_contractible_certificate(
    g: &MultiGraph,
    alpha: Rational64,
    max_vertices: usize,
    oracle_budget: usize,
) -> Option<ContractibleCertificate> {
    let n = g.vertex_count();
    let max_len = max_vertices.min(CYCLE_CAP).min(n);
    if max_len < 3 {
        return None;
    }
    let nbrs = neighbour_sets(g);
    let mut budget = SEARCH_BUDGET;
    let mut seen_sets: Vec<Vec<Vertex>> = Vec::new();
    for len in 3..=max_len {
        for a in 0..n {
            if nbrs[a].len() + 1 > len {
                continue;
            }
            let mut found = None;
            cycles_through(&nbrs, a, len, true, &mut budget, &mut |cyc: &[Vertex]| {
                if let Some(c) = certify_forced(g, &nbrs, cyc, alpha) {
                    found = Some(c);
                    return true;
                }
                false
            });
            if found.is_some() {
                return found;
            }
        }
    }
    if n > oracle_budget {
        return None;
    }
    // exact class on tiny graphs: every short cycle, smallest first
    let mut budget = SEARCH_BUDGET;
    let mut candidates: Vec<Vec<Vertex>> = Vec::new();
    for len in 3..=max_len.min(n.saturating_sub(1)) {
        for a in 0..n {
            cycles_through(&nbrs, a, len, false, &mut budget, &mut |cyc: &[Vertex]| {
                let mut s = cyc.to_vec();
                s.sort_unstable();
                if s[0] == a && !seen_sets.contains(&s) {
                    seen_sets.push(s);
                    candidates.push(cyc.to_vec());
                }
                candidates.len() >= ORACLE_CANDIDATES
            });
            if candidates.len() >= ORACLE_CANDIDATES {
                break;
            }
        }
    }
    for cyc in candidates {
        let edges = cycle_edges(g, &cyc);
        let mut inside = vec![false; n];
        for &x in &cyc {
            inside[x] = true;
        }
        if let Ok(Some(min_inside)) = oracle::min_edges_inside(g, &inside, 200_000) {
            if meets(min_inside, edges.len(), alpha) {
                let mut vertices = cyc.clone();
                vertices.sort_unstable();
                return Some(ContractibleCertificate {
                    vertices,
                    edges,
                    justification: Justification::Exact { min_inside },
                });
            }
        }
    }
    None
}

fn meets(lower: usize, size: usize, alpha: Rational64) -> bool {
    Rational64::from_integer(lower as i64) * alpha >= Rational64::from_integer(size as i64)
}

fn neighbour_sets(g: &MultiGraph) -> Vec<Vec<Vertex>> {
    let mut nbrs = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        if !e.is_loop() {
            nbrs[e.u].push(e.v);
            nbrs[e.v].push(e.u);
        }
    }
    for l in &mut nbrs {
        l.sort_unstable();
        l.dedup();
    }
    nbrs
}

fn cycle_edges(g: &MultiGraph, cyc: &[Vertex]) -> EdgeSubset {
    (0..cyc.len()).map(|i| g.edge_between(cyc[i], cyc[(i + 1) % cyc.len()]).unwrap()).collect()
}

/// Visits simple cycles of exactly `len` vertices through `a` (containing all
/// of `a`'s neighbours when `closed`). The visitor returns true to stop.
fn cycles_through(
    nbrs: &[Vec<Vertex>],
    a: Vertex,
    len: usize,
    closed: bool,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    let n = nbrs.len();
    let mut on = vec![false; n];
    let mut need = vec![false; n];
    if closed {
        for &x in &nbrs[a] {
            need[x] = true;
        }
    }
    let mut path = vec![a];
    on[a] = true;
    fn rec(
        nbrs: &[Vec<Vertex>],
        need: &[bool],
        missing: usize,
        len: usize,
        path: &mut Vec<Vertex>,
        on: &mut [bool],
        budget: &mut u64,
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> bool {
        if *budget == 0 {
            return true;
        }
        *budget -= 1;
        let cur = *path.last().unwrap();
        let a = path[0];
        if path.len() == len {
            if missing == 0 && nbrs[cur].binary_search(&a).is_ok() {
                // each cycle once per direction: second vertex < last vertex
                if path[1] < cur {
                    return visit(path);
                }
            }
            return false;
        }
        if missing > len - path.len() {
            return false;
        }
        for &w in &nbrs[cur] {
            if on[w] {
                continue;
            }
            on[w] = true;
            path.push(w);
            let m = missing - usize::from(need[w]);
            if rec(nbrs, need, m, len, path, on, budget, visit) {
                return true;
            }
            path.pop();
            on[w] = false;
        }
        false
    }
    let missing = if closed { nbrs[a].len() } else { 0 };
    rec(nbrs, &need, missing, len, &mut path, &mut on, budget, visit)
}

fn certify_forced(
    g: &MultiGraph,
    nbrs: &[Vec<Vertex>],
    cyc: &[Vertex],
    alpha: Rational64,
) -> Option<ContractibleCertificate> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &x in cyc {
        inside[x] = true;
    }
    let anchors: Vec<Vertex> = {
        let mut a: Vec<Vertex> = cyc.iter().copied().filter(|&x| nbrs[x].iter().all(|&y| inside[y])).collect();
        a.sort_unstable();
        a
    };
    if anchors.is_empty() {
        return None;
    }
    let forced = forced_edges(g, &anchors);
    if !meets(forced, cyc.len(), alpha) {
        return None;
    }
    let mut vertices = cyc.to_vec();
    vertices.sort_unstable();
    Some(ContractibleCertificate {
        vertices,
        edges: cycle_edges(g, cyc),
        justification: Justification::ForcedDegree { anchors, forced },
    })
}

/// Fewest edges giving every anchor degree at least 2. Every such edge is
/// inside `V(C)` because anchors have no outside neighbours.
pub fn forced_edges(g: &MultiGraph, anchors: &[Vertex]) -> usize {
    let n = g.vertex_count();
    let mut is_anchor = vec![false; n];
    for &a in anchors {
        is_anchor[a] = true;
    }
    let cand: Vec<(Vertex, Vertex)> =
        g.edges().iter().filter(|e| !e.is_loop() && (is_anchor[e.u] || is_anchor[e.v])).map(|e| (e.u, e.v)).collect();
    let mut deg = vec![0usize; n];
    let mut best = 2 * anchors.len();
    fn rec(
        cand: &[(Vertex, Vertex)],
        k: usize,
        anchors: &[Vertex],
        is_anchor: &[bool],
        deg: &mut [usize],
        used: usize,
        best: &mut usize,
    ) {
        let deficit: usize = anchors.iter().map(|&a| 2usize.saturating_sub(deg[a])).sum();
        if deficit == 0 {
            *best = (*best).min(used);
            return;
        }
        if used + deficit.div_ceil(2) >= *best || k == cand.len() {
            return;
        }
        let (u, v) = cand[k];
        let helps = (is_anchor[u] && deg[u] < 2) || (is_anchor[v] && deg[v] < 2);
        if helps {
            deg[u] += 1;
            deg[v] += 1;
            rec(cand, k + 1, anchors, is_anchor, deg, used + 1, best);
            deg[u] -= 1;
            deg[v] -= 1;
        }
        rec(cand, k + 1, anchors, is_anchor, deg, used, best);
    }
    rec(&cand, 0, anchors, &is_anchor, &mut deg, 0, &mut best);
    best
}

/// Forced-degree lower bound on the solution edges inside `vertices`.
pub fn forced_degree_bound(g: &MultiGraph, vertices: &[Vertex]) -> usize {
    let nbrs = neighbour_sets(g);
    let mut inside = vec![false; g.vertex_count()];
    for &x in vertices {
        inside[x] = true;
    }
    let anchors: Vec<Vertex> = vertices.iter().copied().filter(|&x| nbrs[x].iter().all(|&y| inside[y])).collect();
    forced_edges(g, &anchors)
}

/// Class (i) check for a given 2EC subgraph with `edge_count` edges on `vertices`.
pub fn certify_forced_subgraph(
    g: &MultiGraph,
    vertices: &[Vertex],
    edge_count: usize,
    alpha: Rational64,
) -> Option<Justification> {
    let nbrs = neighbour_sets(g);
    let mut inside = vec![false; g.vertex_count()];
    for &x in vertices {
        inside[x] = true;
    }
    let mut anchors: Vec<Vertex> = vertices.iter().copied().filter(|&x| nbrs[x].iter().all(|&y| inside[y])).collect();
    anchors.sort_unstable();
    if anchors.is_empty() {
        return None;
    }
    let forced = forced_edges(g, &anchors);
    meets(forced, edge_count, alpha).then_some(Justification::ForcedDegree { anchors, forced })
}
