//! Cycles through the huge node and a small cycle node of the same segment.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::component_graph::ComponentGraph;
use crate::cover::{ComponentClass, TwoEdgeCover};
use crate::error::{Error, Result};
use crate::graph::connectivity::is_two_edge_connected;
use crate::graph::cycles::{find_cycle_through_edges, hamiltonian_path_between, path_edges};
use crate::graph::matching::max_matching_across;
use crate::graph::{EdgeId, MultiGraph, Vertex};
use crate::oracle::min_weight_2ecss;

/// Which attachment pattern the small cycle shows towards its segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderCase {
    /// Three consecutive cycle vertices have edges into the segment.
    Consecutive,
    /// Only a split pattern, and the two skipped vertices see no other node.
    SplitClosed,
    /// Only a split pattern, and a skipped vertex reaches another segment.
    SplitOpen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderPayload {
    /// Hamiltonian `u`-`v` path of `G[V(C_A)]`.
    Path(Vec<EdgeId>),
    /// Node `d` off the cycle and edges `f` that, with `uv`, 2-edge-connect
    /// `V(C_A) ∪ V(C_D)`.
    Gadget { d: usize, f: Vec<EdgeId> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderOutcome {
    pub case: LadderCase,
    pub cycle: Vec<EdgeId>,
    pub u: Vertex,
    pub v: Vertex,
    pub payload: LadderPayload,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderBudget {
    pub cycle: u64,
    pub oracle: u64,
}

/// Returns the first outcome found; path outcomes are preferred.
pub fn cycle_through_huge_and_small(
    g: &MultiGraph,
    h: &TwoEdgeCover,
    cg: &ComponentGraph,
    segment: &[usize],
    l: usize,
    a: usize,
    budget: LadderBudget,
) -> Result<LadderOutcome> {
    ladder_search(g, h, cg, segment, l, a, budget, &mut |_| true)
}

/// Enumerates outcomes until `accept` returns true.
#[allow(clippy::too_many_arguments)]
pub(crate) fn ladder_search(
    g: &MultiGraph,
    h: &TwoEdgeCover,
    cg: &ComponentGraph,
    segment: &[usize],
    l: usize,
    a: usize,
    budget: LadderBudget,
    accept: &mut dyn FnMut(&LadderOutcome) -> bool,
) -> Result<LadderOutcome> {
    let comp_a = cg.component_of_node[a];
    let ComponentClass::Cycle(len_a) = h.classes[comp_a] else {
        return Err(Error::Invariant(format!("node {a} is not a small cycle")));
    };
    if len_a > 5 {
        return Err(Error::Invariant(format!("node {a} is a C{len_a}, not a C4 or C5")));
    }
    let case = classify(g, h, cg, segment, a);
    let (ga, labels) = g.induced_subgraph(&cg.members[a]);
    let local = |x: Vertex| labels.binary_search(&x).ok();

    let incident =
        |x: usize| -> Vec<EdgeId> { cg.graph.edges().iter().filter(|e| e.touches(x)).map(|e| e.id).collect() };
    let a_edges = incident(a);
    let l_edges = incident(l);
    let touches_l = |e: EdgeId| cg.graph.edge(e).is_some_and(|x| x.touches(l));

    // every cycle through A and L entering A at distinct vertices, in a fixed order
    let mut cycles: Vec<(Vec<EdgeId>, Vertex, Vertex)> = Vec::new();
    let mut seen: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    for (i, &a1) in a_edges.iter().enumerate() {
        for &a2 in &a_edges[i + 1..] {
            let u = cg.end_in(g, a1, a).unwrap();
            let v = cg.end_in(g, a2, a).unwrap();
            if u == v {
                continue;
            }
            let feeds: Vec<Vec<EdgeId>> = if touches_l(a1) || touches_l(a2) {
                vec![vec![a1, a2]]
            } else {
                l_edges.iter().map(|&e| vec![a1, a2, e]).collect()
            };
            for f in feeds {
                if let Some(k) = find_cycle_through_edges(&cg.graph, &f, budget.cycle)? {
                    let mut key = k.clone();
                    key.sort_unstable();
                    if seen.insert(key) {
                        cycles.push((k, u, v));
                    }
                }
            }
        }
    }

    let mut ham: BTreeMap<(Vertex, Vertex), Option<Vec<EdgeId>>> = BTreeMap::new();
    for (k, u, v) in &cycles {
        let p = ham
            .entry((*u, *v))
            .or_insert_with(|| {
                let walk = hamiltonian_path_between(&ga, local(*u)?, local(*v)?)?;
                path_edges(&ga, &walk)
            })
            .clone();
        if let Some(p) = p {
            let out = LadderOutcome { case, cycle: k.clone(), u: *u, v: *v, payload: LadderPayload::Path(p) };
            if accept(&out) {
                return Ok(out);
            }
        }
    }

    for (k, u, v) in &cycles {
        let on_k: BTreeSet<usize> = k
            .iter()
            .flat_map(|&e| {
                let x = cg.graph.edge(e).unwrap();
                [x.u, x.v]
            })
            .collect();
        for d in 0..cg.node_count() {
            if on_k.contains(&d) {
                continue;
            }
            let ComponentClass::Cycle(len_d) = h.classes[cg.component_of_node[d]] else { continue };
            if cg.members[a].len() + cg.members[d].len() > 9 {
                continue;
            }
            if let Some(f) = gadget(g, cg, a, d, *u, *v, len_a + len_d, budget.oracle)? {
                let out =
                    LadderOutcome { case, cycle: k.clone(), u: *u, v: *v, payload: LadderPayload::Gadget { d, f } };
                if accept(&out) {
                    return Ok(out);
                }
            }
        }
    }

    let others: Vec<Vertex> =
        segment.iter().filter(|&&x| x != a).flat_map(|&x| cg.members[x].iter().copied()).collect();
    let m = max_matching_across(g, &cg.members[a], &others);
    if m.len() < 3 {
        return Err(Error::StructuredViolation(format!(
            "only a {}-matching between node {a} and the rest of its segment",
            m.len()
        )));
    }
    Err(Error::CaseLadderExhausted(format!(
        "{case:?}: no usable cycle through nodes {l} and {a} among {} candidates",
        cycles.len()
    )))
}

/// Smallest `F` in `G[V(C_A) ∪ V(C_D)]` with `F ∪ {uv}` 2-edge-connected, if
/// it has at most `limit` edges.
#[allow(clippy::too_many_arguments)]
fn gadget(
    g: &MultiGraph,
    cg: &ComponentGraph,
    a: usize,
    d: usize,
    u: Vertex,
    v: Vertex,
    limit: usize,
    budget: u64,
) -> Result<Option<Vec<EdgeId>>> {
    let mut verts = cg.members[a].clone();
    verts.extend(cg.members[d].iter().copied());
    let (mut gs, labels) = g.induced_subgraph(&verts);
    let lu = labels.binary_search(&u).unwrap();
    let lv = labels.binary_search(&v).unwrap();
    let dummy = gs.add_edge(lu, lv)?;
    if !is_two_edge_connected(&gs) {
        return Ok(None);
    }
    let weights: Vec<bool> = gs.edges().iter().map(|e| e.id != dummy).collect();
    let r = min_weight_2ecss(&gs, &weights, budget)?;
    let f: Vec<EdgeId> = r.witness.iter().filter(|&e| e != dummy).collect();
    Ok((f.len() <= limit).then_some(f))
}

fn classify(g: &MultiGraph, h: &TwoEdgeCover, cg: &ComponentGraph, segment: &[usize], a: usize) -> LadderCase {
    let order = cycle_order(g, h, cg, a);
    let in_seg: BTreeSet<usize> = segment.iter().copied().filter(|&x| x != a).collect();
    let mut attached = BTreeMap::new();
    let mut outside = BTreeMap::new();
    for &x in &order {
        let nodes: Vec<usize> = g
            .edges()
            .iter()
            .filter(|e| e.touches(x) && !e.is_loop())
            .map(|e| cg.node_of[e.other(x)])
            .filter(|&y| y != a)
            .collect();
        attached.insert(x, nodes.iter().any(|y| in_seg.contains(y)));
        outside.insert(x, nodes.iter().any(|y| !in_seg.contains(y)));
    }
    let k = order.len();
    let consecutive = (0..k).any(|i| (0..3).all(|j| attached[&order[(i + j) % k]]));
    if consecutive {
        return LadderCase::Consecutive;
    }
    let open = order.iter().any(|x| !attached[x] && outside[x]);
    if open {
        LadderCase::SplitOpen
    } else {
        LadderCase::SplitClosed
    }
}

/// Vertices of the cycle component behind node `a` in cyclic order.
fn cycle_order(g: &MultiGraph, h: &TwoEdgeCover, cg: &ComponentGraph, a: usize) -> Vec<Vertex> {
    let c = cg.component_of_node[a];
    let edges: Vec<_> = h.decomposition.component_edges[c].iter().filter_map(|&id| g.edge(id).copied()).collect();
    let start = cg.members[a][0];
    let mut order = vec![start];
    let mut used = BTreeSet::new();
    let mut cur = start;
    while order.len() < cg.members[a].len() {
        let Some(e) = edges.iter().find(|e| e.touches(cur) && !used.contains(&e.id)) else { break };
        used.insert(e.id);
        cur = e.other(cur);
        order.push(cur);
    }
    order
}
