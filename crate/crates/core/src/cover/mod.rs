//! Triangle-free 2-edge covers: exact minimum, canonical form, classification.

mod canonical;

pub use canonical::{canonicalize, CanonStats};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::connectivity::{components, decompose_mask, Host};
use crate::graph::{BlockDecomposition, EdgeSubset, MultiGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentClass {
    /// 2EC component that is a simple cycle on 4 to 7 vertices.
    Cycle(usize),
    /// 2EC component with at least 8 edges.
    Large,
    /// 2EC component with fewer than 8 edges that is not such a cycle.
    SmallNonCycle,
    Triangle,
    Complex,
    /// Edgeless component (only in non-covers).
    Isolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoEdgeCover {
    pub edges: EdgeSubset,
    pub decomposition: BlockDecomposition,
    pub classes: Vec<ComponentClass>,
    pub certified_minimum: bool,
}

impl TwoEdgeCover {
    pub fn new(g: &MultiGraph, edges: EdgeSubset, certified_minimum: bool) -> Self {
        let host = Host::new(g);
        let mask = host.mask(&edges);
        Self::from_mask(&host, &mask, certified_minimum)
    }

    pub fn from_mask(host: &Host, mask: &[bool], certified_minimum: bool) -> Self {
        let decomposition = decompose_mask(host, mask);
        let classes = classify_components(host, mask, &decomposition);
        TwoEdgeCover { edges: host.subset(mask), decomposition, classes, certified_minimum }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.decomposition.components.len()
    }

    pub fn bridge_count(&self) -> usize {
        self.decomposition.bridges.len()
    }

    pub fn is_bridgeless(&self) -> bool {
        self.decomposition.bridges.is_empty()
    }

    pub fn is_triangle_free(&self) -> bool {
        !self.classes.contains(&ComponentClass::Triangle)
    }
}

fn classify_components(host: &Host, mask: &[bool], d: &BlockDecomposition) -> Vec<ComponentClass> {
    let deg = host.degrees(mask);
    (0..d.components.len())
        .map(|c| {
            let ne = d.component_edges[c].len();
            let nv = d.components[c].len();
            if ne == 0 {
                ComponentClass::Isolated
            } else if d.is_complex(c) {
                ComponentClass::Complex
            } else if ne >= 8 {
                ComponentClass::Large
            } else if nv == 3 && ne == 3 {
                ComponentClass::Triangle
            } else if ne == nv && d.components[c].iter().all(|&v| deg[v] == 2) && ne >= 4 {
                ComponentClass::Cycle(ne)
            } else {
                ComponentClass::SmallNonCycle
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    SmallNonCycleComponent,
    PendantBlockUnder6,
    NonPendantBlockUnder4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalViolation {
    pub kind: ViolationKind,
    pub component: usize,
    pub block: Option<usize>,
}

/// Empty iff the cover is canonical.
pub fn check_canonical(h: &TwoEdgeCover) -> Vec<CanonicalViolation> {
    let d = &h.decomposition;
    let mut out = Vec::new();
    for (c, class) in h.classes.iter().enumerate() {
        match class {
            ComponentClass::SmallNonCycle | ComponentClass::Triangle => {
                out.push(CanonicalViolation { kind: ViolationKind::SmallNonCycleComponent, component: c, block: None });
            }
            ComponentClass::Complex => {
                for b in d.component_blocks(c) {
                    let size = d.blocks[b].len();
                    let kind = if d.pendant[b] && size < 6 {
                        Some(ViolationKind::PendantBlockUnder6)
                    } else if !d.pendant[b] && size < 4 {
                        Some(ViolationKind::NonPendantBlockUnder4)
                    } else {
                        None
                    };
                    if let Some(kind) = kind {
                        out.push(CanonicalViolation { kind, component: c, block: Some(b) });
                    }
                }
            }
            _ => {}
        }
    }
    out
}

pub fn describe_violations(v: &[CanonicalViolation]) -> String {
    v.iter()
        .map(|x| match x.block {
            Some(b) => format!("{:?}(component {}, block {})", x.kind, x.component, b),
            None => format!("{:?}(component {})", x.kind, x.component),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBudget {
    /// Exact search only up to this many vertices.
    pub max_vertices: usize,
    pub max_nodes: u64,
}

impl Default for CoverBudget {
    fn default() -> Self {
        CoverBudget { max_vertices: 48, max_nodes: 300_000 }
    }
}

/// Every vertex has at least two incident non-loop edges in `mask`.
pub fn is_two_edge_cover_mask(host: &Host, mask: &[bool]) -> bool {
    let mut deg = vec![0usize; host.n];
    for (i, &(u, v)) in host.ends.iter().enumerate() {
        if mask[i] && u != v {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    deg.iter().all(|&d| d >= 2)
}

pub fn triangle_components(host: &Host, mask: &[bool]) -> Vec<Vec<usize>> {
    let (comp, count) = components(host, mask);
    let mut verts = vec![Vec::new(); count];
    for v in 0..host.n {
        verts[comp[v]].push(v);
    }
    let mut ec = vec![0usize; count];
    for i in 0..host.m() {
        if mask[i] {
            ec[comp[host.ends[i].0]] += 1;
        }
    }
    (0..count).filter(|&c| verts[c].len() == 3 && ec[c] == 3).map(|c| verts[c].clone()).collect()
}

pub fn is_tf_cover_mask(host: &Host, mask: &[bool]) -> bool {
    is_two_edge_cover_mask(host, mask) && triangle_components(host, mask).is_empty()
}

/// Minimum triangle-free 2-edge cover. Exact branch-and-bound within the
/// budget, otherwise a greedy cover with `certified_minimum = false`.
pub fn min_triangle_free_cover(g: &MultiGraph, budget: CoverBudget) -> Result<TwoEdgeCover> {
    let host = Host::new(g);
    let usable: Vec<bool> = host.ends.iter().map(|&(u, v)| u != v).collect();
    if let Some(v) = host.degrees(&usable).iter().position(|&d| d < 2) {
        return Err(Error::Infeasible(format!("vertex {v} has degree below 2")));
    }
    let greedy =
        greedy_cover(&host).ok_or_else(|| Error::Infeasible("graph has no triangle-free 2-edge cover".into()))?;
    if host.n > budget.max_vertices {
        return Ok(TwoEdgeCover::from_mask(&host, &greedy, false));
    }
    let mut s = CoverSearch {
        host: &host,
        state: usable.iter().map(|&u| if u { FREE } else { OUT }).collect(),
        best_size: greedy.iter().filter(|&&b| b).count(),
        best: greedy,
        nodes: 0,
        budget: budget.max_nodes,
        exhausted: false,
    };
    if s.best_size > host.n {
        s.recurse();
    }
    let certified = !s.exhausted;
    Ok(TwoEdgeCover::from_mask(&host, &s.best, certified))
}

const FREE: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct CoverSearch<'a> {
    host: &'a Host,
    state: Vec<u8>,
    best: Vec<bool>,
    best_size: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CoverSearch<'_> {
    fn recurse(&mut self) {
        if self.exhausted || self.best_size <= self.host.n {
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
        let deg_u = host.degrees(&u_mask);
        let size = s_mask.iter().filter(|&&b| b).count();
        let deficit: usize = deg_s.iter().map(|&d| 2usize.saturating_sub(d)).sum();
        if (size + deficit.div_ceil(2)).max(host.n) >= self.best_size {
            return;
        }
        if deg_u.iter().any(|&d| d < 2) {
            return;
        }
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..host.n {
            if deg_s[v] < 2 {
                let free = deg_u[v] - deg_s[v];
                if pick.is_none_or(|(_, f)| free < f) {
                    pick = Some((v, free));
                }
            }
        }
        let candidates: Vec<usize> = match pick {
            Some((v, _)) => host.adj[v].iter().map(|&(_, ei)| ei).filter(|&ei| self.state[ei] == FREE).collect(),
            None => {
                let tris = triangle_components(host, &s_mask);
                match tris.first() {
                    None => {
                        self.best_size = size;
                        self.best = s_mask;
                        return;
                    }
                    Some(t) => (0..host.m())
                        .filter(|&i| {
                            let (u, v) = host.ends[i];
                            self.state[i] == FREE && (t.contains(&u) != t.contains(&v))
                        })
                        .collect(),
                }
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
}

/// Greedy triangle-free 2-edge cover followed by redundant-edge removal.
pub fn greedy_cover(host: &Host) -> Option<Vec<bool>> {
    let n = host.n;
    let mut mask = vec![false; host.m()];
    let mut deg = vec![0usize; n];
    for v in 0..n {
        while deg[v] < 2 {
            // prefer an edge to another vertex that still needs degree
            let pick = host.adj[v]
                .iter()
                .filter(|&&(w, ei)| w != v && !mask[ei])
                .min_by_key(|&&(w, ei)| (usize::from(deg[w] >= 2), ei))
                .copied();
            let (w, ei) = pick?;
            mask[ei] = true;
            deg[v] += 1;
            deg[w] += 1;
        }
    }
    // break triangles by attaching them elsewhere
    let mut guard = 0;
    loop {
        let tris = triangle_components(host, &mask);
        let Some(t) = tris.first() else { break };
        guard += 1;
        if guard > host.m() + 1 {
            return None;
        }
        let leave = (0..host.m()).find(|&i| {
            let (u, v) = host.ends[i];
            !mask[i] && (t.contains(&u) != t.contains(&v))
        });
        {
            let i = leave?;
            mask[i] = true
        }
    }
    prune_redundant(host, &mut mask);
    Some(mask)
}

/// Drops edges (largest index first) while the cover stays triangle-free.
pub fn prune_redundant(host: &Host, mask: &mut [bool]) {
    for i in (0..host.m()).rev() {
        if !mask[i] {
            continue;
        }
        let (u, v) = host.ends[i];
        mask[i] = false;
        let deg = host.degrees(mask);
        if deg[u] < 2 || deg[v] < 2 || !triangle_components(host, mask).is_empty() {
            mask[i] = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> MultiGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn c4_cover_is_itself() {
        let g = cycle(4);
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.certified_minimum);
        assert_eq!(c.classes, vec![ComponentClass::Cycle(4)]);
    }

    #[test]
    fn prism_cover_is_six_cycle() {
        let g = MultiGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
            .unwrap();
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.is_triangle_free());
    }

    #[test]
    fn canonical_checks() {
        let g = cycle(5);
        let c = TwoEdgeCover::new(&g, g.edge_ids(), true);
        assert!(check_canonical(&c).is_empty());
        // 7-edge 2EC component that is not a C7: C6 plus a chord
        let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.push((0, 3));
        let g = MultiGraph::from_edges(6, &e).unwrap();
        let c = TwoEdgeCover::new(&g, g.edge_ids(), false);
        let v = check_canonical(&c);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::SmallNonCycleComponent);
    }

    #[test]
    fn pendant_c5_block_is_flagged() {
        // C5 on 0..5, bridge 0-5, C6 on 5..11
        let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.push((0, 5));
        e.extend((0..6).map(|i| (5 + i, 5 + (i + 1) % 6)));
        let g = MultiGraph::from_edges(11, &e).unwrap();
        let c = TwoEdgeCover::new(&g, g.edge_ids(), false);
        let v = check_canonical(&c);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::PendantBlockUnder6);
    }
}
