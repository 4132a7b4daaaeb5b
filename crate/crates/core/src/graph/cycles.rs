use std::collections::{BTreeSet, VecDeque};

use super::multigraph::{EdgeId, MultiGraph, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_CYCLE_BUDGET: u64 = 1_000_000;

/// A simple cycle containing every edge of `f`, as edge ids in cycle order.
///
/// Backtracking: the edges of `f` must form a linear forest (or a single
/// cycle); its paths are joined by internally vertex-disjoint connecting paths.
pub fn find_cycle_through_edges(g: &MultiGraph, f: &[EdgeId], budget: u64) -> Result<Option<Vec<EdgeId>>> {
    let n = g.vertex_count();
    let fset: BTreeSet<EdgeId> = f.iter().copied().collect();
    let mut fedges = Vec::new();
    for &id in &fset {
        match g.edge(id) {
            Some(e) => fedges.push(*e),
            None => return Ok(None),
        }
    }
    if let Some(lp) = fedges.iter().find(|e| e.is_loop()) {
        return Ok(if fedges.len() == 1 { Some(vec![lp.id]) } else { None });
    }
    let mut fdeg = vec![0usize; n];
    let mut fadj: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); n];
    for e in &fedges {
        fdeg[e.u] += 1;
        fdeg[e.v] += 1;
        fadj[e.u].push((e.v, e.id));
        fadj[e.v].push((e.u, e.id));
    }
    if fdeg.iter().any(|&d| d > 2) {
        return Ok(None);
    }

    // Split f into paths; detect a closed cycle.
    let mut seen_edge: BTreeSet<EdgeId> = BTreeSet::new();
    let mut segments: Vec<Segment> = Vec::new();
    for start in 0..n {
        if fdeg[start] != 1 {
            continue;
        }
        let a = start;
        if fadj[a].iter().all(|(_, id)| seen_edge.contains(id)) {
            continue;
        }
        let mut verts = vec![a];
        let mut edges = Vec::new();
        let mut cur = a;
        let mut prev_edge = None;
        loop {
            let next = fadj[cur].iter().find(|&&(_, id)| Some(id) != prev_edge);
            match next {
                Some(&(w, id)) if !seen_edge.contains(&id) => {
                    seen_edge.insert(id);
                    edges.push(id);
                    verts.push(w);
                    prev_edge = Some(id);
                    cur = w;
                }
                _ => break,
            }
        }
        segments.push(Segment { verts, edges });
    }
    if seen_edge.len() < fset.len() {
        // Remaining edges lie on closed cycles.
        if !segments.is_empty() {
            return Ok(None);
        }
        let first = fedges[0];
        let mut order = vec![first.id];
        let mut used: BTreeSet<EdgeId> = [first.id].into();
        let mut cur = first.v;
        while cur != first.u {
            let &(w, id) = fadj[cur].iter().find(|(_, id)| !used.contains(id)).unwrap();
            used.insert(id);
            order.push(id);
            cur = w;
        }
        return Ok(if used.len() == fset.len() { Some(order) } else { None });
    }

    if segments.is_empty() {
        return Ok(shortest_any_cycle(g));
    }
    let mut blocked = vec![false; n];
    let mut endpoint_of = vec![usize::MAX; n];
    for (i, s) in segments.iter().enumerate() {
        for &x in &s.verts {
            blocked[x] = true;
        }
        endpoint_of[s.verts[0]] = i;
        endpoint_of[*s.verts.last().unwrap()] = i;
    }
    let adj = g.adjacency();
    let mut search = Search {
        g,
        adj: &adj,
        fset: &fset,
        segments: &segments,
        blocked,
        endpoint_of,
        used_seg: vec![false; segments.len()],
        budget,
        expansions: 0,
        path: Vec::new(),
    };
    search.used_seg[0] = true;
    search.path.extend(segments[0].edges.iter().copied());
    let start = segments[0].verts[0];
    let cur = *segments[0].verts.last().unwrap();
    let found = search.extend(cur, start, 1)?;
    Ok(if found { Some(search.path) } else { None })
}

struct Segment {
    verts: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

struct Search<'a> {
    g: &'a MultiGraph,
    adj: &'a [Vec<(Vertex, usize)>],
    fset: &'a BTreeSet<EdgeId>,
    segments: &'a [Segment],
    blocked: Vec<bool>,
    endpoint_of: Vec<usize>,
    used_seg: Vec<bool>,
    budget: u64,
    expansions: u64,
    path: Vec<EdgeId>,
}

impl Search<'_> {
    /// From `cur`, find a connecting path to the next segment (or to `start`
    /// once all segments are used) and continue.
    fn extend(&mut self, cur: Vertex, start: Vertex, used: usize) -> Result<bool> {
        let all_used = used == self.segments.len();
        self.walk(cur, start, used, all_used)
    }

    fn walk(&mut self, at: Vertex, start: Vertex, used: usize, all_used: bool) -> Result<bool> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(Error::BudgetExceeded("cycle search"));
        }
        for &(w, ei) in &self.adj[at] {
            let e = self.g.edges()[ei];
            if e.is_loop() || self.fset.contains(&e.id) || self.path.contains(&e.id) {
                continue;
            }
            if all_used {
                if w == start {
                    self.path.push(e.id);
                    return Ok(true);
                }
            } else {
                let s = self.endpoint_of[w];
                if s != usize::MAX && !self.used_seg[s] {
                    let seg = &self.segments[s];
                    let forward = seg.verts[0] == w;
                    let other = if forward { *seg.verts.last().unwrap() } else { seg.verts[0] };
                    let mut seg_edges = seg.edges.clone();
                    if !forward {
                        seg_edges.reverse();
                    }
                    let mark = self.path.len();
                    self.path.push(e.id);
                    self.path.extend(seg_edges);
                    self.used_seg[s] = true;
                    if self.extend(other, start, used + 1)? {
                        return Ok(true);
                    }
                    self.used_seg[s] = false;
                    self.path.truncate(mark);
                    continue;
                }
            }
            if !self.blocked[w] {
                self.blocked[w] = true;
                self.path.push(e.id);
                if self.walk(w, start, used, all_used)? {
                    return Ok(true);
                }
                self.path.pop();
                self.blocked[w] = false;
            }
        }
        Ok(false)
    }
}

fn shortest_any_cycle(g: &MultiGraph) -> Option<Vec<EdgeId>> {
    (0..g.vertex_count()).filter_map(|x| shortest_cycle_through(g, x, None)).min_by_key(|c| c.len())
}

/// Shortest cycle through `x` (BFS; ties resolved by edge-id order), using
/// only vertices with `allowed[v]` when given. Length 2 via parallel edges counts.
pub fn shortest_cycle_through(g: &MultiGraph, x: Vertex, allowed: Option<&[bool]>) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let ok = |v: Vertex| allowed.is_none_or(|a| a[v]);
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; n];
    let mut parent: Vec<Option<(Vertex, EdgeId)>> = vec![None; n];
    let mut branch = vec![usize::MAX; n];
    let mut best: Option<(usize, Vertex, Vertex, EdgeId)> = None;
    let mut q = VecDeque::new();
    dist[x] = 0;
    for &(w, ei) in &adj[x] {
        let e = g.edges()[ei];
        if e.is_loop() || !ok(w) {
            continue;
        }
        if dist[w] == usize::MAX {
            dist[w] = 1;
            parent[w] = Some((x, e.id));
            branch[w] = ei;
            q.push_back(w);
        } else if best.is_none_or(|b| 2 < b.0) {
            best = Some((2, x, w, e.id));
        }
    }
    while let Some(p) = q.pop_front() {
        if best.is_some_and(|b| 2 * dist[p] + 1 >= b.0) {
            break;
        }
        for &(w, ei) in &adj[p] {
            let e = g.edges()[ei];
            if e.is_loop() || w == x || !ok(w) || parent[p].map(|pp| pp.1) == Some(e.id) {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[p] + 1;
                parent[w] = Some((p, e.id));
                branch[w] = branch[p];
                q.push_back(w);
            } else if branch[w] != branch[p] {
                let len = dist[p] + dist[w] + 1;
                if best.is_none_or(|b| len < b.0) {
                    best = Some((len, p, w, e.id));
                }
            }
        }
    }
    let (_, p, w, id) = best?;
    let up = |mut v: Vertex| {
        let mut out = Vec::new();
        while v != x {
            let (pv, pe) = parent[v].unwrap();
            out.push(pe);
            v = pv;
        }
        out
    };
    let mut left = up(p);
    left.reverse();
    left.push(id);
    left.extend(up(w));
    Some(left)
}

/// Hamiltonian path from `u` to `v`, first found in lexicographic vertex order.
pub fn hamiltonian_path_between(g: &MultiGraph, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return None;
    }
    if n == 1 {
        return (u == v).then(|| vec![u]);
    }
    if u == v {
        return None;
    }
    let mut nbrs: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for e in g.edges() {
        if !e.is_loop() {
            nbrs[e.u].insert(e.v);
            nbrs[e.v].insert(e.u);
        }
    }
    let mut path = vec![u];
    let mut on = vec![false; n];
    on[u] = true;
    fn rec(nbrs: &[BTreeSet<Vertex>], path: &mut Vec<Vertex>, on: &mut [bool], target: Vertex) -> bool {
        let n = nbrs.len();
        let cur = *path.last().unwrap();
        if path.len() == n {
            return cur == target;
        }
        for &w in &nbrs[cur] {
            if on[w] || (w == target && path.len() + 1 < n) {
                continue;
            }
            on[w] = true;
            path.push(w);
            if rec(nbrs, path, on, target) {
                return true;
            }
            path.pop();
            on[w] = false;
        }
        false
    }
    rec(&nbrs, &mut path, &mut on, v).then_some(path)
}

/// Edge ids realising a vertex walk (smallest id between consecutive vertices).
pub fn path_edges(g: &MultiGraph, walk: &[Vertex]) -> Option<Vec<EdgeId>> {
    walk.windows(2).map(|w| g.edge_between(w[0], w[1])).collect()
}

/// Checks that `cycle` is a simple closed walk in `g`.
pub fn is_simple_cycle(g: &MultiGraph, cycle: &[EdgeId]) -> bool {
    if cycle.is_empty() {
        return false;
    }
    let ids: BTreeSet<_> = cycle.iter().collect();
    if ids.len() != cycle.len() {
        return false;
    }
    let Some(edges) = cycle.iter().map(|&id| g.edge(id).copied()).collect::<Option<Vec<_>>>() else {
        return false;
    };
    if edges.len() == 1 {
        return edges[0].is_loop();
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for e in &edges {
        if e.is_loop() {
            return false;
        }
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    if deg.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    // connected
    let sub = g.spanning_subgraph(&cycle.iter().copied().collect());
    let verts = g.vertices_of(&cycle.iter().copied().collect());
    let host = super::connectivity::Host::new(&sub);
    let (comp, _) = super::connectivity::components(&host, &host.full_mask());
    verts.iter().all(|&v| comp[v] == comp[verts[0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> MultiGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &e).unwrap()
    }

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn c6_opposite_edges() {
        let g = cycle(6);
        let c = find_cycle_through_edges(&g, &[EdgeId(0), EdgeId(3)], DEFAULT_CYCLE_BUDGET).unwrap().unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_simple_cycle(&g, &c));
    }

    #[test]
    fn k4_perfect_matching() {
        let g = k4();
        // (0,1) and (2,3)
        let c = find_cycle_through_edges(&g, &[EdgeId(0), EdgeId(5)], DEFAULT_CYCLE_BUDGET).unwrap().unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_simple_cycle(&g, &c));
        assert!(c.contains(&EdgeId(0)) && c.contains(&EdgeId(5)));
    }

    #[test]
    fn three_edges_at_a_vertex() {
        let g = k4();
        let r = find_cycle_through_edges(&g, &[EdgeId(0), EdgeId(1), EdgeId(2)], 1000).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn parallel_edges_give_two_cycle() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let c = find_cycle_through_edges(&g, &[EdgeId(0)], 100).unwrap().unwrap();
        assert_eq!(c, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(shortest_cycle_through(&g, 0, None).unwrap().len(), 2);
    }

    #[test]
    fn shortest_cycle_in_wheel() {
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5 {
            e.push((5, i));
        }
        let g = MultiGraph::from_edges(6, &e).unwrap();
        let c = shortest_cycle_through(&g, 0, None).unwrap();
        assert_eq!(c.len(), 3);
        assert!(is_simple_cycle(&g, &c));
    }

    #[test]
    fn hamiltonian_paths_on_c5_and_c6() {
        let g = cycle(5);
        assert_eq!(hamiltonian_path_between(&g, 0, 1), Some(vec![0, 4, 3, 2, 1]));
        assert_eq!(hamiltonian_path_between(&g, 0, 2), None);
        // C6 on v1..v6 plus v2v4; path v3 -> v1
        let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.push((1, 3));
        let g = MultiGraph::from_edges(6, &e).unwrap();
        assert_eq!(hamiltonian_path_between(&g, 2, 0), Some(vec![2, 1, 3, 4, 5, 0]));
    }
}
