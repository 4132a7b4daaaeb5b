//! Bridge covering: ear augmentations that remove bridges at non-increasing cost.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cover::{check_canonical, is_tf_cover_mask, TwoEdgeCover};
use crate::credit::{component_credits, cost, credits_unchecked, CreditLedger, Quarters};
use crate::error::{Error, Result};
use crate::graph::connectivity::Host;
use crate::graph::{EdgeId, MultiGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeConfig {
    /// Initial ear length in non-cover edges.
    pub ear_len: usize,
    /// Largest ear length tried before giving up.
    pub ear_cap: usize,
    /// Cover edges that may be dropped alongside an ear.
    pub max_removals: usize,
    /// Ears evaluated per pendant block and length.
    pub max_ears: usize,
}

impl Default for BridgeConfig {
    fn default() -> Self {
        BridgeConfig { ear_len: 4, ear_cap: 8, max_removals: 2, max_ears: 4000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeIteration {
    pub component: usize,
    pub bridges_before: usize,
    pub bridges_after: usize,
    pub cost_before: Quarters,
    pub cost_after: Quarters,
    pub added: Vec<EdgeId>,
    pub removed: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeOutcome {
    pub cover: TwoEdgeCover,
    pub ledger: CreditLedger,
    pub iterations: Vec<BridgeIteration>,
}

/// Repeats bridge-reducing moves until the cover is bridgeless.
pub fn cover_bridges(
    g: &MultiGraph,
    h: &TwoEdgeCover,
    ledger: &CreditLedger,
    cfg: BridgeConfig,
) -> Result<BridgeOutcome> {
    let host = Host::new(g);
    let mut cover = h.clone();
    let mut ledger = ledger.clone();
    let mut iterations = Vec::new();
    while !cover.is_bridgeless() {
        let before_cost = cost(&cover, &ledger);
        let before_bridges = cover.bridge_count();
        let mv = find_move(&host, &cover, before_cost, cfg)?;
        let next = TwoEdgeCover::from_mask(&host, &mv.mask, cover.certified_minimum);
        let next_ledger = update_ledger(&cover, &ledger, &next, &mv.touched);
        let fresh = credits_unchecked(&next);
        if fresh != next_ledger {
            return Err(Error::CreditInvariant("incremental ledger disagrees with recomputation".into()));
        }
        let after_cost = cost(&next, &next_ledger);
        if after_cost > before_cost || next.bridge_count() >= before_bridges {
            return Err(Error::Invariant("bridge move broke its contract".into()));
        }
        iterations.push(BridgeIteration {
            component: mv.component,
            bridges_before: before_bridges,
            bridges_after: next.bridge_count(),
            cost_before: before_cost,
            cost_after: after_cost,
            added: mv.added,
            removed: mv.removed,
        });
        cover = next;
        ledger = next_ledger;
    }
    Ok(BridgeOutcome { cover, ledger, iterations })
}

struct Move {
    component: usize,
    mask: Vec<bool>,
    added: Vec<EdgeId>,
    removed: Vec<EdgeId>,
    touched: Vec<Vertex>,
}

/// Removes the entries of every component touching `touched` and inserts
/// the entries of the new components touching it.
fn update_ledger(old: &TwoEdgeCover, ledger: &CreditLedger, new: &TwoEdgeCover, touched: &[Vertex]) -> CreditLedger {
    let mut out = ledger.clone();
    let old_comps: BTreeSet<usize> = touched.iter().map(|&v| old.decomposition.component_of[v]).collect();
    for c in old_comps {
        for (k, _) in component_credits(old, c) {
            out.credits.remove(&k);
        }
    }
    let new_comps: BTreeSet<usize> = touched.iter().map(|&v| new.decomposition.component_of[v]).collect();
    for c in new_comps {
        out.credits.extend(component_credits(new, c));
    }
    out
}

fn find_move(host: &Host, cover: &TwoEdgeCover, cur_cost: Quarters, cfg: BridgeConfig) -> Result<Move> {
    let d = &cover.decomposition;
    let mask = host.mask(&cover.edges);
    let complex: Vec<usize> = (0..d.components.len()).filter(|&c| d.is_complex(c)).collect();
    let mut first_stuck = None;
    for &c in &complex {
        let mut len = cfg.ear_len;
        loop {
            if let Some(m) = best_move_for(host, cover, &mask, c, cur_cost, len, cfg) {
                return Ok(m);
            }
            if len >= cfg.ear_cap {
                break;
            }
            len = (len * 2).min(cfg.ear_cap);
        }
        first_stuck.get_or_insert(c);
    }
    Err(Error::Stuck { component: first_stuck.unwrap_or(0) })
}

/// Scores all ears from the pendant blocks of component `c`.
fn best_move_for(
    host: &Host,
    cover: &TwoEdgeCover,
    mask: &[bool],
    c: usize,
    cur_cost: Quarters,
    max_len: usize,
    cfg: BridgeConfig,
) -> Option<Move> {
    let d = &cover.decomposition;
    let n = host.n;
    // auxiliary node of each vertex: vertices of C stay, other components collapse
    let in_c: Vec<bool> = (0..n).map(|v| d.component_of[v] == c).collect();
    let node_of: Vec<usize> = (0..n).map(|v| if in_c[v] { v } else { n + d.component_of[v] }).collect();
    let mut aux: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + d.components.len()];
    for i in 0..host.m() {
        let (u, v) = host.ends[i];
        if mask[i] || u == v {
            continue;
        }
        let (a, b) = (node_of[u], node_of[v]);
        if a == b {
            continue;
        }
        aux[a].push((b, i));
        aux[b].push((a, i));
    }
    let bridges_before = cover.bridge_count();
    let mut best: Option<(usize, Quarters, Move)> = None;
    for b in d.component_blocks(c) {
        if !d.pendant[b] {
            continue;
        }
        let in_b: Vec<bool> = {
            let mut x = vec![false; n];
            for &v in &d.block_vertices[b] {
                x[v] = true;
            }
            x
        };
        let mut ears: Vec<Vec<usize>> = Vec::new();
        for &s in &d.block_vertices[b] {
            let mut path = Vec::new();
            let mut used = vec![false; aux.len()];
            used[s] = true;
            collect_ears(&aux, &in_c, &in_b, n, s, max_len, &mut used, &mut path, &mut ears, cfg.max_ears);
            if ears.len() >= cfg.max_ears {
                break;
            }
        }
        for ear in ears {
            let mut trial = mask.to_vec();
            for &e in &ear {
                trial[e] = true;
            }
            let near: Vec<usize> = {
                let verts: BTreeSet<Vertex> = ear.iter().flat_map(|&e| [host.ends[e].0, host.ends[e].1]).collect();
                (0..host.m())
                    .filter(|&i| mask[i] && (verts.contains(&host.ends[i].0) || verts.contains(&host.ends[i].1)))
                    .collect()
            };
            let mut variants: Vec<Vec<usize>> = vec![Vec::new()];
            if cfg.max_removals >= 1 {
                variants.extend(near.iter().map(|&e| vec![e]));
            }
            if cfg.max_removals >= 2 {
                for (k, &x) in near.iter().enumerate() {
                    for &y in &near[k + 1..] {
                        variants.push(vec![x, y]);
                    }
                }
            }
            for rem in variants {
                for &e in &rem {
                    trial[e] = false;
                }
                if let Some((gain, delta, next)) = evaluate(host, cover, &trial, bridges_before, cur_cost) {
                    let better = match &best {
                        None => true,
                        Some((bg, bd, _)) => gain > *bg || (gain == *bg && delta < *bd),
                    };
                    if better {
                        let mut touched: Vec<Vertex> =
                            ear.iter().chain(rem.iter()).flat_map(|&e| [host.ends[e].0, host.ends[e].1]).collect();
                        touched.extend(d.components[c].iter().copied());
                        touched.sort_unstable();
                        touched.dedup();
                        best = Some((
                            gain,
                            delta,
                            Move {
                                component: c,
                                mask: next,
                                added: ear.iter().map(|&e| host.ids[e]).collect(),
                                removed: rem.iter().map(|&e| host.ids[e]).collect(),
                                touched,
                            },
                        ));
                    }
                }
                for &e in &rem {
                    trial[e] = true;
                }
            }
        }
    }
    best.map(|(_, _, m)| m)
}

/// `(bridges removed, cost delta, mask)` for a legal move.
fn evaluate(
    host: &Host,
    cover: &TwoEdgeCover,
    trial: &[bool],
    bridges_before: usize,
    cur_cost: Quarters,
) -> Option<(usize, Quarters, Vec<bool>)> {
    if !is_tf_cover_mask(host, trial) {
        return None;
    }
    let next = TwoEdgeCover::from_mask(host, trial, cover.certified_minimum);
    if next.bridge_count() >= bridges_before || !check_canonical(&next).is_empty() {
        return None;
    }
    let c = cost(&next, &credits_unchecked(&next));
    if c > cur_cost {
        return None;
    }
    Some((bridges_before - next.bridge_count(), c - cur_cost, trial.to_vec()))
}

#[allow(clippy::too_many_arguments)]
fn collect_ears(
    aux: &[Vec<(usize, usize)>],
    in_c: &[bool],
    in_b: &[bool],
    n: usize,
    at: usize,
    left: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) {
    if left == 0 || out.len() >= cap {
        return;
    }
    for &(w, e) in &aux[at] {
        if used[w] {
            continue;
        }
        if w < n && in_c[w] {
            if !in_b[w] {
                let mut ear = path.clone();
                ear.push(e);
                out.push(ear);
                if out.len() >= cap {
                    return;
                }
            }
            continue;
        }
        used[w] = true;
        path.push(e);
        collect_ears(aux, in_c, in_b, n, w, left - 1, used, path, out, cap);
        path.pop();
        used[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::credit::init_credits;

    #[test]
    fn dumbbell_bridge_is_covered() {
        // two C6 blocks joined by bridge 0-6, plus host edges 3-9 closing an ear
        let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.push((0, 6));
        e.extend((0..6).map(|i| (6 + i, 6 + (i + 1) % 6)));
        let cover_edges = e.len();
        e.push((3, 9));
        let g = MultiGraph::from_edges(12, &e).unwrap();
        let h: crate::graph::EdgeSubset = (0..cover_edges as u32).map(EdgeId).collect();
        let h = TwoEdgeCover::new(&g, h, false);
        let l = init_credits(&h).unwrap();
        let before = cost(&h, &l);
        let out = cover_bridges(&g, &h, &l, BridgeConfig::default()).unwrap();
        assert!(out.cover.is_bridgeless());
        assert!(cost(&out.cover, &out.ledger) <= before);
        assert_eq!(out.iterations.len(), 1);
    }

    #[test]
    fn bridgeless_input_is_unchanged() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = TwoEdgeCover::new(&g, g.edge_ids(), true);
        let l = init_credits(&h).unwrap();
        let out = cover_bridges(&g, &h, &l, BridgeConfig::default()).unwrap();
        assert_eq!(out.cover.edges, h.edges);
        assert!(out.iterations.is_empty());
    }
}
