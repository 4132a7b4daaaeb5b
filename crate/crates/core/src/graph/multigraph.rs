use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stable edge identifier. Survives contraction and subgraph extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

/// Ordered set of edge ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSubset(BTreeSet<EdgeId>);

impl EdgeSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.0.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn extend<I: IntoIterator<Item = EdgeId>>(&mut self, it: I) {
        self.0.extend(it)
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &EdgeSubset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn as_set(&self) -> &BTreeSet<EdgeId> {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.0.iter().copied().collect()
    }
}

impl FromIterator<EdgeId> for EdgeSubset {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        EdgeSubset(iter.into_iter().collect())
    }
}

impl IntoIterator for EdgeSubset {
    type Item = EdgeId;
    type IntoIter = std::collections::btree_set::IntoIter<EdgeId>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a EdgeSubset {
    type Item = EdgeId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, EdgeId>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Undirected multigraph on vertices `0..n`. Loops and parallel edges allowed.
///
/// Edges are kept sorted by id. `next_id` is carried through every derived
/// graph so that freshly allocated ids never collide within a lineage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    next_id: u32,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new(), next_id: 0 }
    }

    /// Builds a graph whose edge ids follow the order of `pairs`.
    pub fn from_edges(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    /// Raises the id watermark so later allocations start at `at_least`.
    pub fn reserve_ids(&mut self, at_least: u32) {
        self.next_id = self.next_id.max(at_least);
    }

    pub fn edge_ids(&self) -> EdgeSubset {
        self.edges.iter().map(|e| e.id).collect()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        let id = EdgeId(self.next_id);
        self.add_edge_with_id(u, v, id)?;
        Ok(id)
    }

    pub fn add_edge_with_id(&mut self, u: Vertex, v: Vertex, id: EdgeId) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        match self.edges.binary_search_by_key(&id, |e| e.id) {
            Ok(_) => Err(Error::DuplicateEdgeId(id.0)),
            Err(pos) => {
                self.edges.insert(pos, Edge { id, u, v });
                self.next_id = self.next_id.max(id.0 + 1);
                Ok(())
            }
        }
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok().map(|i| &self.edges[i])
    }

    pub fn index_of(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<Edge> {
        let i = self.index_of(id)?;
        Some(self.edges.remove(i))
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.edges.iter().map(|e| usize::from(e.u == x) + usize::from(e.v == x)).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    /// Adjacency lists of `(neighbour, edge index)` in edge-id order.
    pub fn adjacency(&self) -> Vec<Vec<(Vertex, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            if !e.is_loop() {
                adj[e.v].push((e.u, i));
            }
        }
        adj
    }

    /// Same vertex set, only the edges in `keep`.
    pub fn spanning_subgraph(&self, keep: &EdgeSubset) -> MultiGraph {
        MultiGraph {
            n: self.n,
            edges: self.edges.iter().filter(|e| keep.contains(e.id)).copied().collect(),
            next_id: self.next_id,
        }
    }

    pub fn without_edges(&self, drop: &EdgeSubset) -> MultiGraph {
        MultiGraph {
            n: self.n,
            edges: self.edges.iter().filter(|e| !drop.contains(e.id)).copied().collect(),
            next_id: self.next_id,
        }
    }

    /// Induced subgraph on `vertices` (any order). New vertex `i` is
    /// `vertices_sorted[i]`; the returned map gives the old label of each new vertex.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (MultiGraph, Vec<Vertex>) {
        let mut old: Vec<Vertex> = vertices.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new_of[e.u] != usize::MAX && new_of[e.v] != usize::MAX)
            .map(|e| Edge { id: e.id, u: new_of[e.u], v: new_of[e.v] })
            .collect();
        (MultiGraph { n: old.len(), edges, next_id: self.next_id }, old)
    }

    /// Contracts the vertex set `s` into one vertex. Edges inside `s` become
    /// loops at the new vertex; every edge keeps its id.
    pub fn contract(&self, s: &[Vertex]) -> Result<ContractionMap> {
        if s.is_empty() {
            return Err(Error::EmptyContraction);
        }
        let mut in_s = vec![false; self.n];
        for &x in s {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
            in_s[x] = true;
        }
        let rep = *s.iter().min().unwrap();
        let mut vertex_map = vec![0; self.n];
        let mut next = 0;
        for x in 0..self.n {
            if in_s[x] && x != rep {
                continue;
            }
            vertex_map[x] = next;
            next += 1;
        }
        for x in 0..self.n {
            if in_s[x] {
                vertex_map[x] = vertex_map[rep];
            }
        }
        let edges = self.edges.iter().map(|e| Edge { id: e.id, u: vertex_map[e.u], v: vertex_map[e.v] }).collect();
        let contracted = vertex_map[rep];
        Ok(ContractionMap { graph: MultiGraph { n: next, edges, next_id: self.next_id }, vertex_map, contracted })
    }

    /// `G | S` in the usual notation: contract, then drop the loops created.
    pub fn contract_dropping_loops(&self, s: &[Vertex]) -> Result<ContractionMap> {
        let mut c = self.contract(s)?;
        let cv = c.contracted;
        c.graph.edges.retain(|e| !(e.u == cv && e.v == cv));
        Ok(c)
    }

    /// Edges of `G[s]`.
    pub fn edges_within(&self, s: &[Vertex]) -> EdgeSubset {
        let mut mask = vec![false; self.n];
        for &x in s {
            mask[x] = true;
        }
        self.edges.iter().filter(|e| mask[e.u] && mask[e.v]).map(|e| e.id).collect()
    }

    /// Vertices touched by the edges of `h`.
    pub fn vertices_of(&self, h: &EdgeSubset) -> Vec<Vertex> {
        let mut mask = vec![false; self.n];
        for id in h {
            if let Some(e) = self.edge(id) {
                mask[e.u] = true;
                mask[e.v] = true;
            }
        }
        (0..self.n).filter(|&x| mask[x]).collect()
    }

    /// Smallest-id edge between `u` and `v`, if any.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.edges.iter().find(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u)).map(|e| e.id)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| !e.is_loop() && seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }
}

/// Result of a contraction: the new graph and where each old vertex went.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    pub graph: MultiGraph,
    pub vertex_map: Vec<Vertex>,
    pub contracted: Vertex,
}
