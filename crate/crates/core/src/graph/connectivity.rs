use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::multigraph::{EdgeId, EdgeSubset, MultiGraph, Vertex};

const UNSET: usize = usize::MAX;

/// Index-based view of a graph for hot loops. Edge `i` is `g.edges()[i]`;
/// algorithms take an `active` mask over edge indices.
#[derive(Clone, Debug)]
pub struct Host {
    pub n: usize,
    pub ends: Vec<(Vertex, Vertex)>,
    pub ids: Vec<EdgeId>,
    pub adj: Vec<Vec<(Vertex, usize)>>,
}

impl Host {
    pub fn new(g: &MultiGraph) -> Host {
        Host {
            n: g.vertex_count(),
            ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            ids: g.edges().iter().map(|e| e.id).collect(),
            adj: g.adjacency(),
        }
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    pub fn mask(&self, h: &EdgeSubset) -> Vec<bool> {
        self.ids.iter().map(|&id| h.contains(id)).collect()
    }

    pub fn full_mask(&self) -> Vec<bool> {
        vec![true; self.m()]
    }

    pub fn subset(&self, mask: &[bool]) -> EdgeSubset {
        self.ids.iter().zip(mask).filter(|(_, &b)| b).map(|(&id, _)| id).collect()
    }

    pub fn degrees(&self, active: &[bool]) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (i, &(u, v)) in self.ends.iter().enumerate() {
            if active[i] {
                d[u] += 1;
                d[v] += 1;
            }
        }
        d
    }
}

/// Output of one low-link pass.
#[derive(Clone, Debug)]
pub struct LowLink {
    pub comp: Vec<usize>,
    pub ncomp: usize,
    pub is_bridge: Vec<bool>,
    pub is_cut: Vec<bool>,
}

pub fn lowlink(host: &Host, active: &[bool]) -> LowLink {
    let n = host.n;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut pe = vec![UNSET; n];
    let mut comp = vec![UNSET; n];
    let mut is_bridge = vec![false; host.m()];
    let mut is_cut = vec![false; n];
    let mut t = 0;
    let mut ncomp = 0;
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = t;
        low[root] = t;
        t += 1;
        comp[root] = ncomp;
        let mut root_children = 0;
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < host.adj[v].len() {
                let (w, ei) = host.adj[v][top.1];
                top.1 += 1;
                if !active[ei] || ei == pe[v] || w == v {
                    continue;
                }
                if disc[w] == UNSET {
                    pe[w] = ei;
                    disc[w] = t;
                    low[w] = t;
                    t += 1;
                    comp[w] = ncomp;
                    stack.push((w, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        is_bridge[pe[v]] = true;
                    }
                    if p == root {
                        root_children += 1;
                    } else if low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
        ncomp += 1;
    }
    LowLink { comp, ncomp, is_bridge, is_cut }
}

/// Connected components of the active edges: `(component of vertex, count)`.
pub fn components(host: &Host, active: &[bool]) -> (Vec<usize>, usize) {
    let mut comp = vec![UNSET; host.n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..host.n {
        if comp[s] != UNSET {
            continue;
        }
        comp[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &(w, ei) in &host.adj[v] {
                if active[ei] && comp[w] == UNSET {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Connected components of the active edges restricted to vertices in `alive`.
pub fn components_on(host: &Host, active: &[bool], alive: &[bool]) -> (Vec<usize>, usize) {
    let mut comp = vec![UNSET; host.n];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..host.n {
        if !alive[s] || comp[s] != UNSET {
            continue;
        }
        comp[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &(w, ei) in &host.adj[v] {
                if active[ei] && alive[w] && comp[w] == UNSET {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// 2-edge-connected classes: components once bridges are removed.
pub fn two_edge_classes(host: &Host, active: &[bool]) -> (Vec<usize>, usize, LowLink) {
    let ll = lowlink(host, active);
    let no_bridges: Vec<bool> = active.iter().zip(&ll.is_bridge).map(|(&a, &b)| a && !b).collect();
    let (class, count) = components(host, &no_bridges);
    (class, count, ll)
}

/// Spanning, connected and bridgeless. Graphs on at most one vertex qualify.
pub fn is_2ec_spanning_mask(host: &Host, active: &[bool]) -> bool {
    if host.n <= 1 {
        return true;
    }
    let ll = lowlink(host, active);
    ll.ncomp == 1 && !ll.is_bridge.iter().zip(active).any(|(&b, &a)| a && b)
}

pub fn is_two_edge_connected(g: &MultiGraph) -> bool {
    let host = Host::new(g);
    is_2ec_spanning_mask(&host, &host.full_mask())
}

/// Whether `(V(g), h)` is a 2-edge-connected spanning subgraph of `g`.
pub fn is_2ec_spanning(g: &MultiGraph, h: &EdgeSubset) -> bool {
    let host = Host::new(g);
    is_2ec_spanning_mask(&host, &host.mask(h))
}

pub fn bridges(g: &MultiGraph, h: &EdgeSubset) -> Vec<EdgeId> {
    let host = Host::new(g);
    let mask = host.mask(h);
    let ll = lowlink(&host, &mask);
    (0..host.m()).filter(|&i| mask[i] && ll.is_bridge[i]).map(|i| host.ids[i]).collect()
}

pub fn cut_vertices(g: &MultiGraph) -> Vec<Vertex> {
    let host = Host::new(g);
    let ll = lowlink(&host, &host.full_mask());
    (0..host.n).filter(|&v| ll.is_cut[v]).collect()
}

/// Biconnected components (vertex sense) as lists of edge indices. Loops are skipped.
pub fn biconnected_components(host: &Host, active: &[bool]) -> Vec<Vec<usize>> {
    let n = host.n;
    let mut disc = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut pe = vec![UNSET; n];
    let mut t = 0;
    let mut out = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = t;
        low[root] = t;
        t += 1;
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < host.adj[v].len() {
                let (w, ei) = host.adj[v][top.1];
                top.1 += 1;
                if !active[ei] || ei == pe[v] || w == v {
                    continue;
                }
                if disc[w] == UNSET {
                    pe[w] = ei;
                    disc[w] = t;
                    low[w] = t;
                    t += 1;
                    estack.push(ei);
                    stack.push((w, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    estack.push(ei);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == pe[v] {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Components, blocks, bridges and cut vertices of a spanning subgraph `(V, H)`.
///
/// A block is a maximal 2-edge-connected subgraph with at least one edge.
/// Components are ordered by smallest edge id, edgeless ones last by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub components: Vec<Vec<Vertex>>,
    pub component_edges: Vec<Vec<EdgeId>>,
    pub component_of: Vec<usize>,
    pub blocks: Vec<Vec<EdgeId>>,
    pub block_vertices: Vec<Vec<Vertex>>,
    pub block_component: Vec<usize>,
    pub pendant: Vec<bool>,
    pub bridges: BTreeSet<EdgeId>,
    pub cut_vertices: BTreeSet<Vertex>,
}

impl BlockDecomposition {
    pub fn is_complex(&self, c: usize) -> bool {
        self.component_edges[c].iter().any(|e| self.bridges.contains(e))
    }

    pub fn component_bridges(&self, c: usize) -> Vec<EdgeId> {
        self.component_edges[c].iter().copied().filter(|e| self.bridges.contains(e)).collect()
    }

    pub fn component_blocks(&self, c: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.block_component[b] == c).collect()
    }

    pub fn is_2ec_component(&self, c: usize) -> bool {
        !self.component_edges[c].is_empty() && !self.is_complex(c)
    }
}

pub fn decompose(g: &MultiGraph, h: &EdgeSubset) -> BlockDecomposition {
    let host = Host::new(g);
    let mask = host.mask(h);
    decompose_mask(&host, &mask)
}

pub fn decompose_mask(host: &Host, mask: &[bool]) -> BlockDecomposition {
    let n = host.n;
    let (class, nclass, ll) = two_edge_classes(host, mask);

    // Order components by smallest incident edge index (= smallest id).
    let mut comp_key = vec![usize::MAX; ll.ncomp];
    for i in 0..host.m() {
        if mask[i] {
            let c = ll.comp[host.ends[i].0];
            comp_key[c] = comp_key[c].min(i);
        }
    }
    let mut comp_min_vertex = vec![usize::MAX; ll.ncomp];
    for v in 0..n {
        let c = ll.comp[v];
        comp_min_vertex[c] = comp_min_vertex[c].min(v);
    }
    let mut order: Vec<usize> = (0..ll.ncomp).collect();
    order.sort_by_key(|&c| (comp_key[c], comp_min_vertex[c]));
    let mut rank = vec![0; ll.ncomp];
    for (r, &c) in order.iter().enumerate() {
        rank[c] = r;
    }
    let component_of: Vec<usize> = (0..n).map(|v| rank[ll.comp[v]]).collect();
    let mut components = vec![Vec::new(); ll.ncomp];
    for v in 0..n {
        components[component_of[v]].push(v);
    }
    let mut component_edges = vec![Vec::new(); ll.ncomp];
    let mut bridges = BTreeSet::new();
    for i in 0..host.m() {
        if mask[i] {
            component_edges[component_of[host.ends[i].0]].push(host.ids[i]);
            if ll.is_bridge[i] {
                bridges.insert(host.ids[i]);
            }
        }
    }

    // Blocks: non-bridge edges grouped by 2-edge-connected class.
    let mut class_block = vec![usize::MAX; nclass];
    let mut blocks: Vec<Vec<EdgeId>> = Vec::new();
    let mut block_class = Vec::new();
    for i in 0..host.m() {
        if mask[i] && !ll.is_bridge[i] {
            let c = class[host.ends[i].0];
            if class_block[c] == usize::MAX {
                class_block[c] = blocks.len();
                blocks.push(Vec::new());
                block_class.push(c);
            }
            blocks[class_block[c]].push(host.ids[i]);
        }
    }
    let mut block_vertices = vec![Vec::new(); blocks.len()];
    for v in 0..n {
        let b = class_block[class[v]];
        if b != usize::MAX {
            block_vertices[b].push(v);
        }
    }
    let block_component: Vec<usize> = block_vertices.iter().map(|vs| component_of[vs[0]]).collect();
    let mut bridge_count = vec![0usize; blocks.len()];
    for i in 0..host.m() {
        if mask[i] && ll.is_bridge[i] {
            for x in [host.ends[i].0, host.ends[i].1] {
                let b = class_block[class[x]];
                if b != usize::MAX {
                    bridge_count[b] += 1;
                }
            }
        }
    }
    let pendant: Vec<bool> = bridge_count.iter().map(|&c| c == 1).collect();
    let cut_vertices = (0..n).filter(|&v| ll.is_cut[v]).collect();
    BlockDecomposition {
        components,
        component_edges,
        component_of,
        blocks,
        block_vertices,
        block_component,
        pendant,
        bridges,
        cut_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_2ec_and_path_is_not() {
        let c = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_two_edge_connected(&c));
        let p = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_two_edge_connected(&p));
        assert_eq!(bridges(&p, &p.edge_ids()).len(), 2);
    }

    #[test]
    fn parallel_pair_is_2ec() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(is_two_edge_connected(&g));
    }

    #[test]
    fn two_triangles_joined_by_bridge() {
        let g = MultiGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let d = decompose(&g, &g.edge_ids());
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.bridges.iter().copied().collect::<Vec<_>>(), vec![EdgeId(3)]);
        assert_eq!(d.pendant, vec![true, true]);
        assert_eq!(d.cut_vertices.iter().copied().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn biconnected_blocks_of_bowtie() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let host = Host::new(&g);
        let b = biconnected_components(&host, &host.full_mask());
        assert_eq!(b, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
