use serde::{Deserialize, Serialize};

use crate::cover::TwoEdgeCover;
use crate::graph::connectivity::{biconnected_components, Host};
use crate::graph::{MultiGraph, Vertex};

/// The host graph with every cover component contracted to a node and the
/// resulting self-loops dropped. Edge ids are the host ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGraph {
    pub graph: MultiGraph,
    pub node_of: Vec<usize>,
    /// Host vertices of each node, ascending.
    pub members: Vec<Vec<Vertex>>,
    /// Index of the cover component behind each node.
    pub component_of_node: Vec<usize>,
}

impl ComponentGraph {
    pub fn node_count(&self) -> usize {
        self.members.len()
    }

    /// Distinct neighbouring nodes, ascending.
    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.graph.edges().iter().filter(|e| e.touches(a)).map(|e| e.other(a)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Host vertex of `e` lying in node `a`.
    pub fn end_in(&self, g: &MultiGraph, e: crate::graph::EdgeId, a: usize) -> Option<Vertex> {
        let x = g.edge(e)?;
        if self.node_of[x.u] == a {
            Some(x.u)
        } else if self.node_of[x.v] == a {
            Some(x.v)
        } else {
            None
        }
    }
}

/// Nodes are numbered by the smallest host vertex they contain.
pub fn build_component_graph(g: &MultiGraph, h: &TwoEdgeCover) -> ComponentGraph {
    let d = &h.decomposition;
    let mut order: Vec<usize> = (0..d.components.len()).collect();
    order.sort_by_key(|&c| d.components[c].iter().min().copied().unwrap_or(usize::MAX));
    let mut node_of = vec![usize::MAX; g.vertex_count()];
    let mut members = Vec::with_capacity(order.len());
    for (node, &c) in order.iter().enumerate() {
        let mut vs = d.components[c].clone();
        vs.sort_unstable();
        for &v in &vs {
            node_of[v] = node;
        }
        members.push(vs);
    }
    let mut graph = MultiGraph::new(order.len());
    graph.reserve_ids(g.next_id());
    for e in g.edges() {
        let (a, b) = (node_of[e.u], node_of[e.v]);
        if a != b {
            graph.add_edge_with_id(a, b, e.id).expect("fresh ids");
        }
    }
    ComponentGraph { graph, node_of, members, component_of_node: order }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub nodes: Vec<usize>,
    pub trivial: bool,
}

/// Non-trivial segments (biconnected pieces with at least 3 nodes) in order
/// of their smallest node, then one trivial segment per remaining node.
pub fn compute_segments(cg: &ComponentGraph) -> Vec<Segment> {
    let host = Host::new(&cg.graph);
    let mut covered = vec![false; cg.node_count()];
    let mut out = Vec::new();
    for piece in biconnected_components(&host, &host.full_mask()) {
        let mut nodes: Vec<usize> = piece.iter().flat_map(|&i| [host.ends[i].0, host.ends[i].1]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.len() >= 3 {
            for &x in &nodes {
                covered[x] = true;
            }
            out.push(Segment { nodes, trivial: false });
        }
    }
    out.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    for x in 0..cg.node_count() {
        if !covered[x] {
            out.push(Segment { nodes: vec![x], trivial: true });
        }
    }
    out
}
