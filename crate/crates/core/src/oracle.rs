//! Exact desk-scale solvers and an independent feasibility verifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::connectivity::{components, is_2ec_spanning_mask, lowlink, Host};
use crate::graph::{EdgeSubset, MultiGraph};

pub const DEFAULT_ORACLE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub value: usize,
    pub witness: EdgeSubset,
    pub nodes_explored: u64,
    pub certified: bool,
}

/// Minimum 2-edge-connected spanning subgraph by branch-and-bound.
/// `certified` is false when the node budget ran out; the witness is then
/// the best solution found.
pub fn exact_min_2ecss(g: &MultiGraph, budget: u64) -> Result<ExactResult> {
    let host = Host::new(g);
    let weights = vec![1u32; host.m()];
    let r = TwoEcssSearch::new(&host, weights, budget)?.run();
    Ok(ExactResult {
        value: r.best_weight as usize,
        witness: host.subset(&r.best),
        nodes_explored: r.nodes,
        certified: r.complete,
    })
}

/// Minimum number of edges with both endpoints in `inside` over all 2-ECSS
/// of `g`. `Ok(None)` when the budget ran out.
pub fn min_edges_inside(g: &MultiGraph, inside: &[bool], budget: u64) -> Result<Option<usize>> {
    let host = Host::new(g);
    let weights: Vec<u32> = host.ends.iter().map(|&(u, v)| u32::from(inside[u] && inside[v])).collect();
    let r = TwoEcssSearch::new(&host, weights, budget)?.run();
    Ok(r.complete.then_some(r.best_weight as usize))
}

/// 2-ECSS of minimum total weight, where weights are 0 or 1 per edge (in
/// edge-id order). `value` is the weight of the witness.
pub fn min_weight_2ecss(g: &MultiGraph, weights: &[bool], budget: u64) -> Result<ExactResult> {
    let host = Host::new(g);
    let w: Vec<u32> = weights.iter().map(|&b| u32::from(b)).collect();
    let r = TwoEcssSearch::new(&host, w, budget)?.run();
    Ok(ExactResult {
        value: r.best_weight as usize,
        witness: host.subset(&r.best),
        nodes_explored: r.nodes,
        certified: r.complete,
    })
}

struct SearchOutcome {
    best: Vec<bool>,
    best_weight: u32,
    nodes: u64,
    complete: bool,
}

const FREE: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct TwoEcssSearch<'a> {
    host: &'a Host,
    w: Vec<u32>,
    /// vertex whose every non-loop edge has positive weight
    heavy: Vec<bool>,
    unit: bool,
    state: Vec<u8>,
    best: Vec<bool>,
    best_weight: u32,
    floor: u32,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> TwoEcssSearch<'a> {
    fn new(host: &'a Host, w: Vec<u32>, budget: u64) -> Result<Self> {
        let full = host.full_mask();
        if !is_2ec_spanning_mask(host, &full) {
            return Err(Error::Infeasible("input graph is not 2-edge-connected".into()));
        }
        let mut heavy = vec![true; host.n];
        for (i, &(u, v)) in host.ends.iter().enumerate() {
            if u != v && w[i] == 0 {
                heavy[u] = false;
                heavy[v] = false;
            }
        }
        let unit = w.iter().all(|&x| x == 1);
        // loops never help
        let state: Vec<u8> = host.ends.iter().map(|&(u, v)| if u == v { OUT } else { FREE }).collect();
        let mut s = TwoEcssSearch {
            host,
            w,
            heavy,
            unit,
            state,
            best: Vec::new(),
            best_weight: u32::MAX,
            floor: 0,
            nodes: 0,
            budget,
            exhausted: false,
        };
        s.floor = if s.unit && host.n >= 2 { host.n as u32 } else { 0 };
        let init = s.reverse_delete();
        s.best_weight = s.weight_of(&init);
        s.best = init;
        Ok(s)
    }

    fn weight_of(&self, mask: &[bool]) -> u32 {
        mask.iter().zip(&self.w).filter(|(&b, _)| b).map(|(_, &w)| w).sum()
    }

    /// Greedy minimal solution: drop heavy then light edges, highest index first.
    fn reverse_delete(&self) -> Vec<bool> {
        let mut mask: Vec<bool> = self.state.iter().map(|&s| s != OUT).collect();
        let mut order: Vec<usize> = (0..self.host.m()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.w[i]), std::cmp::Reverse(i)));
        for i in order {
            if !mask[i] {
                continue;
            }
            mask[i] = false;
            if !is_2ec_spanning_mask(self.host, &mask) {
                mask[i] = true;
            }
        }
        mask
    }

    fn run(mut self) -> SearchOutcome {
        if self.best_weight > self.floor {
            self.recurse();
        }
        SearchOutcome { best: self.best, best_weight: self.best_weight, nodes: self.nodes, complete: !self.exhausted }
    }

    fn recurse(&mut self) {
        if self.exhausted || self.best_weight <= self.floor {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let host = self.host;
        let s_mask: Vec<bool> = self.state.iter().map(|&s| s == IN).collect();
        let u_mask: Vec<bool> = self.state.iter().map(|&s| s != OUT).collect();

        let deg_s = host.degrees(&s_mask);
        let s_weight = self.weight_of(&s_mask);
        let deficit: u32 = (0..host.n).filter(|&v| self.heavy[v]).map(|v| 2u32.saturating_sub(deg_s[v] as u32)).sum();
        let mut lb = s_weight + deficit.div_ceil(2);
        if self.unit {
            // connected, with at least one cycle and every cycle already in S
            let (_, ncomp) = components(host, &s_mask);
            let cyclomatic = (s_weight as usize + ncomp).saturating_sub(host.n);
            lb = lb.max((host.n + cyclomatic.max(1)).saturating_sub(1) as u32);
        }
        if lb >= self.best_weight {
            return;
        }
        if !is_2ec_spanning_mask(host, &u_mask) {
            return;
        }
        let deg_u = host.degrees(&u_mask);

        // 1. deficit vertex with fewest free edges
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..host.n {
            if deg_s[v] < 2 {
                let free = deg_u[v] - deg_s[v];
                if pick.is_none_or(|(_, f)| free < f) {
                    pick = Some((v, free));
                }
            }
        }
        let candidates: Vec<usize> = if let Some((v, _)) = pick {
            let mut c: Vec<usize> =
                host.adj[v].iter().map(|&(_, ei)| ei).filter(|&ei| self.state[ei] == FREE).collect();
            c.sort_unstable();
            c.dedup();
            // try short far ends first, and edges that close no cycle
            let (comp, _) = components(host, &s_mask);
            c.sort_by_key(|&i| {
                let (a, b) = host.ends[i];
                (deg_s[a] >= 2 || deg_s[b] >= 2, comp[a] == comp[b])
            });
            c
        } else {
            let ll = lowlink(host, &s_mask);
            if ll.ncomp > 1 {
                let side: Vec<bool> = (0..host.n).map(|v| ll.comp[v] == ll.comp[0]).collect();
                self.crossing(&side, usize::MAX)
            } else if let Some(b) = (0..host.m()).find(|&i| s_mask[i] && ll.is_bridge[i]) {
                let mut without = s_mask.clone();
                without[b] = false;
                let (comp, _) = components(host, &without);
                let root = comp[host.ends[b].0];
                let side: Vec<bool> = (0..host.n).map(|v| comp[v] == root).collect();
                self.crossing(&side, b)
            } else {
                // S is feasible
                if s_weight < self.best_weight {
                    self.best_weight = s_weight;
                    self.best = s_mask;
                }
                return;
            }
        };
        let saved = self.state.clone();
        for &e in &candidates {
            self.state[e] = IN;
            self.recurse();
            if self.exhausted {
                break;
            }
            self.state[e] = OUT;
        }
        self.state = saved;
    }

    fn crossing(&self, side: &[bool], skip: usize) -> Vec<usize> {
        (0..self.host.m())
            .filter(|&i| {
                i != skip && self.state[i] == FREE && {
                    let (u, v) = self.host.ends[i];
                    side[u] != side[v]
                }
            })
            .collect()
    }
}

/// Minimum triangle-free 2-edge cover by plain include/exclude search in edge
/// order. Kept deliberately different from the cover module's solver.
pub fn exact_min_tf_cover(g: &MultiGraph, budget: u64) -> Result<ExactResult> {
    let host = Host::new(g);
    let usable: Vec<usize> = (0..host.m()).filter(|&i| host.ends[i].0 != host.ends[i].1).collect();
    let mut deg = vec![0usize; host.n];
    for &i in &usable {
        deg[host.ends[i].0] += 1;
        deg[host.ends[i].1] += 1;
    }
    if let Some(v) = (0..host.n).find(|&v| deg[v] < 2) {
        return Err(Error::Infeasible(format!("vertex {v} has degree below 2")));
    }
    let mut st = TfSearch {
        host: &host,
        order: usable,
        chosen: vec![false; host.m()],
        remaining: deg,
        cur: vec![0; host.n],
        best: None,
        nodes: 0,
        budget,
        exhausted: false,
    };
    st.go(0, 0);
    let nodes = st.nodes;
    let complete = !st.exhausted;
    match st.best {
        Some((value, mask)) => {
            Ok(ExactResult { value, witness: host.subset(&mask), nodes_explored: nodes, certified: complete })
        }
        None if complete => Err(Error::Infeasible("no triangle-free 2-edge cover".into())),
        None => Err(Error::BudgetExceeded("triangle-free cover oracle")),
    }
}

struct TfSearch<'a> {
    host: &'a Host,
    order: Vec<usize>,
    chosen: Vec<bool>,
    /// undecided-or-chosen degree
    remaining: Vec<usize>,
    cur: Vec<usize>,
    best: Option<(usize, Vec<bool>)>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl TfSearch<'_> {
    fn go(&mut self, k: usize, size: usize) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let deficit: usize = self.cur.iter().map(|&d| 2usize.saturating_sub(d)).sum();
        if let Some((b, _)) = &self.best {
            if size + deficit.div_ceil(2) >= *b {
                return;
            }
        }
        if deficit == 0 && !has_triangle_component(self.host, &self.chosen) {
            self.best = Some((size, self.chosen.clone()));
            return;
        }
        if k == self.order.len() {
            return;
        }
        let e = self.order[k];
        let (u, v) = self.host.ends[e];
        // include
        self.chosen[e] = true;
        self.cur[u] += 1;
        self.cur[v] += 1;
        self.go(k + 1, size + 1);
        self.chosen[e] = false;
        self.cur[u] -= 1;
        self.cur[v] -= 1;
        // exclude, if both endpoints can still reach degree 2
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        if self.remaining[u] >= 2 && self.remaining[v] >= 2 {
            self.go(k + 1, size);
        }
        self.remaining[u] += 1;
        self.remaining[v] += 1;
    }
}

/// A component with exactly three vertices and three edges.
pub fn has_triangle_component(host: &Host, mask: &[bool]) -> bool {
    let (comp, count) = components(host, mask);
    let mut vc = vec![0usize; count];
    let mut ec = vec![0usize; count];
    for v in 0..host.n {
        vc[comp[v]] += 1;
    }
    for i in 0..host.m() {
        if mask[i] {
            ec[comp[host.ends[i].0]] += 1;
        }
    }
    (0..count).any(|c| vc[c] == 3 && ec[c] == 3)
}

/// Independent feasibility check: spanning, connected, and no edge whose
/// removal disconnects its endpoints (union-find per edge).
pub fn verify_2ecss(g: &MultiGraph, h: &EdgeSubset) -> bool {
    let n = g.vertex_count();
    if h.iter().any(|id| g.edge(id).is_none()) {
        return false;
    }
    if n <= 1 {
        return true;
    }
    let edges: Vec<(usize, usize)> =
        h.iter().map(|id| g.edge(id).unwrap()).filter(|e| !e.is_loop()).map(|e| (e.u, e.v)).collect();
    let joined = |skip: Option<usize>| {
        let mut uf = UnionFind::new(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if Some(i) != skip {
                uf.union(u, v);
            }
        }
        uf
    };
    let mut all = joined(None);
    let r = all.find(0);
    if (1..n).any(|v| all.find(v) != r) {
        return false;
    }
    (0..edges.len()).all(|i| {
        let mut uf = joined(Some(i));
        uf.find(edges[i].0) == uf.find(edges[i].1)
    })
}

struct UnionFind {
    p: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { p: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.p[r] != r {
            r = self.p[r];
        }
        let mut y = x;
        while self.p[y] != r {
            let nx = self.p[y];
            self.p[y] = r;
            y = nx;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.p[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        MultiGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn small_values() {
        let c7 = MultiGraph::from_edges(7, &(0..7).map(|i| (i, (i + 1) % 7)).collect::<Vec<_>>()).unwrap();
        assert_eq!(exact_min_2ecss(&c7, 1000).unwrap().value, 7);
        let k4 = complete(4);
        let r = exact_min_2ecss(&k4, 1000).unwrap();
        assert_eq!(r.value, 4);
        assert!(r.certified);
        assert!(verify_2ecss(&k4, &r.witness));
        assert_eq!(exact_min_tf_cover(&k4, 10_000).unwrap().value, 4);
    }

    #[test]
    fn path_is_infeasible() {
        let p = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(exact_min_2ecss(&p, 10), Err(Error::Infeasible(_))));
    }

    #[test]
    fn verify_examples() {
        let c5 = MultiGraph::from_edges(5, &(0..5).map(|i| (i, (i + 1) % 5)).collect::<Vec<_>>()).unwrap();
        assert!(verify_2ecss(&c5, &c5.edge_ids()));
        let mut h = c5.edge_ids();
        h.remove(crate::graph::EdgeId(0));
        assert!(!verify_2ecss(&c5, &h));
        let k4 = complete(4);
        // triangle 0-1-2: ids (0,1)=0 (0,2)=1 (1,2)=3
        let tri: EdgeSubset = [0u32, 1, 3].into_iter().map(crate::graph::EdgeId).collect();
        assert!(!verify_2ecss(&k4, &tri));
    }
}
