//! Shared builders, brute-force checks and generators for the integration
//! tests. Nothing here calls into the solver's own connectivity code.
#![allow(dead_code)]

use proptest::prelude::*;
use twoecss::graph::{EdgeId, EdgeSubset, MultiGraph};

pub fn cycle(n: usize) -> MultiGraph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    MultiGraph::from_edges(n, &e).unwrap()
}

pub fn complete(n: usize) -> MultiGraph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    MultiGraph::from_edges(n, &e).unwrap()
}

pub fn petersen() -> MultiGraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    MultiGraph::from_edges(10, &e).unwrap()
}

/// Disjoint union of cycles of the given lengths.
pub fn cycles(lengths: &[usize]) -> MultiGraph {
    let mut e = Vec::new();
    let mut base = 0;
    for &l in lengths {
        for i in 0..l {
            e.push((base + i, base + (i + 1) % l));
        }
        base += l;
    }
    MultiGraph::from_edges(base, &e).unwrap()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

pub fn pairs(g: &MultiGraph, h: &EdgeSubset) -> Vec<(usize, usize)> {
    g.edges().iter().filter(|e| h.contains(e.id)).map(|e| (e.u, e.v)).collect()
}

/// Components of `(0..n, edges)` as a label per vertex.
pub fn labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = Dsu::new(n);
    for &(u, v) in edges {
        d.join(u, v);
    }
    (0..n).map(|v| d.find(v)).collect()
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let l = labels(n, edges);
    l.iter().all(|&x| x == l[0])
}

/// Connected on all `n` vertices and still connected after deleting any one edge.
pub fn naive_2ec(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    connected(n, edges) && (0..edges.len()).all(|skip| naive_bridge_free_at(n, edges, skip))
}

fn naive_bridge_free_at(n: usize, edges: &[(usize, usize)], skip: usize) -> bool {
    let rest: Vec<_> = edges.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &p)| p).collect();
    let before = labels(n, edges);
    let after = labels(n, &rest);
    let (u, v) = edges[skip];
    (before[u] == before[v]) == (after[u] == after[v])
}

/// Edge indices that are bridges of `(0..n, edges)`.
pub fn naive_bridges(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    (0..edges.len()).filter(|&i| !naive_bridge_free_at(n, edges, i)).collect()
}

/// Calls `f` on every `k`-subset of `0..m` until it returns true.
pub fn any_subset(m: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if go(i + 1, m, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, m, k, &mut Vec::new(), f)
}

/// Smallest `k` such that some `k`-subset of the edges satisfies `ok`.
pub fn brute_min(g: &MultiGraph, from: usize, ok: &dyn Fn(&[(usize, usize)]) -> bool) -> Option<usize> {
    let all: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    (from..=all.len()).find(|&k| {
        any_subset(all.len(), k, &mut |idx| {
            let chosen: Vec<_> = idx.iter().map(|&i| all[i]).collect();
            ok(&chosen)
        })
    })
}

pub fn brute_min_2ecss(g: &MultiGraph) -> Option<usize> {
    let n = g.vertex_count();
    brute_min(g, n.min(g.edge_count()), &|s| naive_2ec(n, s))
}

/// Every vertex has degree two or more, no loops counted, and no component
/// is a triangle.
pub fn naive_tf_cover(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut deg = vec![0; n];
    for &(u, v) in edges {
        if u != v {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    if deg.iter().any(|&d| d < 2) {
        return false;
    }
    let l = labels(n, edges);
    let mut verts = std::collections::HashMap::<usize, (usize, usize)>::new();
    for v in 0..n {
        verts.entry(l[v]).or_default().0 += 1;
    }
    for &(u, _) in edges {
        verts.entry(l[u]).or_default().1 += 1;
    }
    verts.values().all(|&(nv, ne)| !(nv == 3 && ne == 3))
}

pub fn brute_min_tf_cover(g: &MultiGraph) -> Option<usize> {
    let n = g.vertex_count();
    brute_min(g, n.min(g.edge_count()), &|s| naive_tf_cover(n, s))
}

pub fn ids(v: &[u32]) -> EdgeSubset {
    v.iter().map(|&i| EdgeId(i)).collect()
}

/// Simple 2EC graph: a Hamiltonian cycle on a shuffled order plus chords.
pub fn two_ec_graph(n_min: usize, n_max: usize, max_chords: usize) -> impl Strategy<Value = MultiGraph> {
    (n_min..=n_max)
        .prop_flat_map(move |n| {
            (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec((0..n, 0..n), 0..=max_chords))
        })
        .prop_map(|(order, chords)| {
            let n = order.len();
            let mut seen = std::collections::BTreeSet::new();
            let mut e = Vec::new();
            let mut add = |u: usize, v: usize, e: &mut Vec<(usize, usize)>| {
                if u != v && seen.insert((u.min(v), u.max(v))) {
                    e.push((u, v));
                }
            };
            for i in 0..n {
                add(order[i], order[(i + 1) % n], &mut e);
            }
            for (u, v) in chords {
                add(u, v, &mut e);
            }
            MultiGraph::from_edges(n, &e).unwrap()
        })
}

/// Any multigraph, loops and parallel edges included.
pub fn any_multigraph(n_max: usize, m_max: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=n_max).prop_flat_map(move |n| prop::collection::vec((0..n, 0..n), 0..=m_max)).prop_map(|e| {
        let n = e.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(1);
        MultiGraph::from_edges(n, &e).unwrap()
    })
}

/// Two 2EC graphs on `a` and `b` vertices glued on three shared vertices.
pub fn glued_pair(
    a: std::ops::RangeInclusive<usize>,
    b: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = MultiGraph> {
    (two_ec_graph(*a.start(), *a.end(), 6), two_ec_graph(*b.start(), *b.end(), 6)).prop_map(|(g1, g2)| {
        let n1 = g1.vertex_count();
        // the last three vertices of g2 become the first three of g1
        let n2 = g2.vertex_count();
        let map = |v: usize| if v + 3 >= n2 { v + 3 - n2 } else { n1 + v };
        let mut e: Vec<(usize, usize)> = g1.edges().iter().map(|e| (e.u, e.v)).collect();
        let mut seen: std::collections::BTreeSet<_> = e.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for ed in g2.edges() {
            let (u, v) = (map(ed.u), map(ed.v));
            if seen.insert((u.min(v), u.max(v))) {
                e.push((u, v));
            }
        }
        MultiGraph::from_edges(n1 + n2 - 3, &e).unwrap()
    })
}
