use std::collections::VecDeque;

use super::multigraph::{EdgeId, MultiGraph, Vertex};

const NIL: usize = usize::MAX;

/// Maximum matching among the edges with one endpoint in `v1` and the other
/// in `v2` (Hopcroft-Karp). Parallel edges collapse to their smallest id.
pub fn max_matching_across(g: &MultiGraph, v1: &[Vertex], v2: &[Vertex]) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut left = vec![NIL; n];
    let mut right = vec![NIL; n];
    for (i, &x) in v1.iter().enumerate() {
        left[x] = i;
    }
    for (i, &x) in v2.iter().enumerate() {
        right[x] = i;
    }
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); v1.len()];
    for e in g.edges() {
        let (a, b) = if left[e.u] != NIL && right[e.v] != NIL {
            (left[e.u], right[e.v])
        } else if left[e.v] != NIL && right[e.u] != NIL {
            (left[e.v], right[e.u])
        } else {
            continue;
        };
        if !adj[a].iter().any(|&(r, _)| r == b) {
            adj[a].push((b, e.id));
        }
    }
    let (ml, _) = hopcroft_karp(&adj, v2.len());
    let mut out: Vec<EdgeId> = ml
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != NIL)
        .map(|(l, &r)| adj[l].iter().find(|&&(x, _)| x == r).unwrap().1)
        .collect();
    out.sort_unstable();
    out
}

/// Returns `(match_of_left, match_of_right)` with `usize::MAX` for unmatched.
pub fn hopcroft_karp(adj: &[Vec<(usize, EdgeId)>], nr: usize) -> (Vec<usize>, Vec<usize>) {
    let nl = adj.len();
    let mut ml = vec![NIL; nl];
    let mut mr = vec![NIL; nr];
    let mut dist = vec![0usize; nl];
    loop {
        // BFS layers from free left vertices
        let mut q = VecDeque::new();
        for l in 0..nl {
            if ml[l] == NIL {
                dist[l] = 0;
                q.push_back(l);
            } else {
                dist[l] = NIL;
            }
        }
        let mut found = false;
        while let Some(l) = q.pop_front() {
            for &(r, _) in &adj[l] {
                let l2 = mr[r];
                if l2 == NIL {
                    found = true;
                } else if dist[l2] == NIL {
                    dist[l2] = dist[l] + 1;
                    q.push_back(l2);
                }
            }
        }
        if !found {
            return (ml, mr);
        }
        let mut it = vec![0usize; nl];
        for l in 0..nl {
            if ml[l] == NIL {
                augment(l, adj, &mut ml, &mut mr, &mut dist, &mut it);
            }
        }
    }
}

fn augment(
    l: usize,
    adj: &[Vec<(usize, EdgeId)>],
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[l] < adj[l].len() {
        let r = adj[l][it[l]].0;
        it[l] += 1;
        let l2 = mr[r];
        if l2 == NIL || (dist[l2] == dist[l] + 1 && augment(l2, adj, ml, mr, dist, it)) {
            ml[l] = r;
            mr[r] = l;
            return true;
        }
    }
    dist[l] = NIL;
    false
}
