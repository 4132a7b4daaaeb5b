//! Gluing a bridgeless canonical cover into a single 2-ECSS.
//!
//! A huge component (at least [`HUGE`] vertices) is created once at a cost of
//! at most 3 and then absorbs the other components one step at a time.

mod component_graph;
mod ladder;

pub use component_graph::{build_component_graph, compute_segments, ComponentGraph, Segment};
pub use ladder::{cycle_through_huge_and_small, LadderBudget, LadderCase, LadderOutcome, LadderPayload};

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::cover::{check_canonical, describe_violations, is_tf_cover_mask, ComponentClass, TwoEdgeCover};
use crate::credit::{cost, credits_unchecked, CreditLedger, Quarters};
use crate::error::{Error, Result};
use crate::graph::connectivity::Host;
use crate::graph::contractible::certify_forced_subgraph;
use crate::graph::cycles::{hamiltonian_path_between, path_edges, shortest_cycle_through, DEFAULT_CYCLE_BUDGET};
use crate::graph::matching::max_matching_across;
use crate::graph::{EdgeId, MultiGraph, Vertex};
use crate::oracle::DEFAULT_ORACLE_BUDGET;

pub const LARGE: usize = 8;
pub const HUGE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlueKind {
    MakeHuge,
    TrivialSegmentGlue,
    NonTrivialSegmentGlue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlueCase {
    AlreadyHuge,
    OneCycle,
    TwoCycles,
    /// Two matching edges to a large neighbour.
    LargeNeighbour,
    /// Two matching edges to a C4/C5 replacing the cycle edge between them.
    CycleSwap,
    /// A C6/C7 replaced by a Hamiltonian path between two matching edges.
    HamiltonianSwap,
    /// Plain cycle through the huge node inside a segment without C4/C5 nodes.
    SegmentCycle,
    LadderPath(LadderCase),
    LadderGadget(LadderCase),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueStep {
    pub kind: GlueKind,
    pub case: GlueCase,
    pub added: Vec<EdgeId>,
    pub removed: Vec<EdgeId>,
    pub cost_before: Quarters,
    pub cost_after: Quarters,
    pub delta: Quarters,
    pub components_before: usize,
    pub components_after: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueConfig {
    pub cycle_budget: u64,
    pub oracle_budget: u64,
}

impl Default for GlueConfig {
    fn default() -> Self {
        GlueConfig { cycle_budget: DEFAULT_CYCLE_BUDGET, oracle_budget: DEFAULT_ORACLE_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueOutcome {
    pub cover: TwoEdgeCover,
    pub steps: Vec<GlueStep>,
}

struct Proposal {
    add: Vec<EdgeId>,
    remove: Vec<EdgeId>,
    case: GlueCase,
}

/// Shared validation for every step.
struct Stepper<'a> {
    g: &'a MultiGraph,
    host: Host,
    cover: &'a TwoEdgeCover,
    cost: Quarters,
}

impl<'a> Stepper<'a> {
    fn new(g: &'a MultiGraph, cover: &'a TwoEdgeCover) -> Self {
        Stepper { g, host: Host::new(g), cover, cost: cost(cover, &credits_unchecked(cover)) }
    }

    /// Applies `p` and checks the step contract; `None` when it fails.
    fn try_apply(&self, p: &Proposal, kind: GlueKind, slack: Quarters) -> Option<(TwoEdgeCover, GlueStep)> {
        let mut mask = self.host.mask(&self.cover.edges);
        let index = |id: EdgeId| self.g.index_of(id);
        let add: BTreeSet<EdgeId> = p.add.iter().copied().collect();
        let remove: BTreeSet<EdgeId> = p.remove.iter().copied().filter(|e| !add.contains(e)).collect();
        for &e in &remove {
            mask[index(e)?] = false;
        }
        for &e in &add {
            mask[index(e)?] = true;
        }
        if !is_tf_cover_mask(&self.host, &mask) {
            return None;
        }
        let next = TwoEdgeCover::from_mask(&self.host, &mask, self.cover.certified_minimum);
        if !next.is_bridgeless() || !check_canonical(&next).is_empty() {
            return None;
        }
        if next.component_count() >= self.cover.component_count() {
            return None;
        }
        let after = cost(&next, &credits_unchecked(&next));
        if after > self.cost + slack {
            return None;
        }
        let added: Vec<EdgeId> = add.iter().copied().filter(|&e| !self.cover.edges.contains(e)).collect();
        let removed: Vec<EdgeId> = remove.iter().copied().filter(|&e| self.cover.edges.contains(e)).collect();
        let step = GlueStep {
            kind,
            case: p.case,
            added,
            removed,
            cost_before: self.cost,
            cost_after: after,
            delta: after - self.cost,
            components_before: self.cover.component_count(),
            components_after: next.component_count(),
        };
        Some((next, step))
    }
}

fn component_edges(cg: &ComponentGraph, h: &TwoEdgeCover, node: usize) -> Vec<EdgeId> {
    h.decomposition.component_edges[cg.component_of_node[node]].clone()
}

fn largest_node(cg: &ComponentGraph) -> usize {
    (0..cg.node_count()).max_by_key(|&x| (cg.members[x].len(), std::cmp::Reverse(x))).unwrap()
}

/// Creates a huge component with at most two cycles of the component graph.
/// Returns the input unchanged with an `AlreadyHuge` step when one exists.
pub fn make_huge(g: &MultiGraph, h: &TwoEdgeCover) -> Result<(TwoEdgeCover, GlueStep)> {
    let base = cost(h, &credits_unchecked(h));
    let noop = |h: &TwoEdgeCover| GlueStep {
        kind: GlueKind::MakeHuge,
        case: GlueCase::AlreadyHuge,
        added: Vec::new(),
        removed: Vec::new(),
        cost_before: base,
        cost_after: base,
        delta: Quarters::ZERO,
        components_before: h.component_count(),
        components_after: h.component_count(),
    };
    if h.decomposition.components.iter().any(|c| c.len() >= HUGE) || h.component_count() <= 1 {
        return Ok((h.clone(), noop(h)));
    }
    let cg = build_component_graph(g, h);
    let a = largest_node(&cg);
    let k = shortest_cycle_through(&cg.graph, a, None)
        .ok_or_else(|| Error::Invariant("component graph is not 2-edge-connected".into()))?;
    let st = Stepper::new(g, h);
    let p = Proposal { add: k.clone(), remove: Vec::new(), case: GlueCase::OneCycle };
    let (h1, s1) = st
        .try_apply(&p, GlueKind::MakeHuge, Quarters::whole(3))
        .ok_or_else(|| Error::Invariant("first cycle of make_huge broke the cover contract".into()))?;
    let anchor = cg.members[a][0];
    let c1 = h1.decomposition.component_of[anchor];
    if h1.component_count() == 1 || h1.decomposition.components[c1].len() >= HUGE {
        return Ok((h1, s1));
    }
    let cg1 = build_component_graph(g, &h1);
    let b = cg1.node_of[anchor];
    let k2 = shortest_cycle_through(&cg1.graph, b, None)
        .ok_or_else(|| Error::Invariant("component graph is not 2-edge-connected".into()))?;
    let mut add = k.clone();
    add.extend(k2);
    let p = Proposal { add, remove: Vec::new(), case: GlueCase::TwoCycles };
    st.try_apply(&p, GlueKind::MakeHuge, Quarters::whole(3))
        .ok_or_else(|| Error::Invariant("second cycle of make_huge broke the cover contract".into()))
}

/// One gluing step when the huge node `l` is a trivial segment.
pub fn glue_trivial_segment(g: &MultiGraph, h: &TwoEdgeCover, l: usize) -> Result<(TwoEdgeCover, GlueStep)> {
    let cg = build_component_graph(g, h);
    let st = Stepper::new(g, h);
    let mut first_err = None;
    for a in cg.neighbours(l) {
        match trivial_with(&st, &cg, l, a) {
            Ok(x) => return Ok(x),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or_else(|| Error::Invariant(format!("huge node {l} has no neighbour"))))
}

fn trivial_with(st: &Stepper, cg: &ComponentGraph, l: usize, a: usize) -> Result<(TwoEdgeCover, GlueStep)> {
    let g = st.g;
    let h = st.cover;
    let kind = GlueKind::TrivialSegmentGlue;
    let m = max_matching_across(g, &cg.members[l], &cg.members[a]);
    if m.len() < 3 {
        return Err(Error::StructuredViolation(format!(
            "only a {}-matching between huge node {l} and trivial neighbour {a}",
            m.len()
        )));
    }
    let end_a = |e: EdgeId| cg.end_in(g, e, a).unwrap();
    let class = h.classes[cg.component_of_node[a]];
    let pairs = || {
        let mut out = Vec::new();
        for (i, &x) in m.iter().enumerate() {
            for &y in &m[i + 1..] {
                out.push((x, y));
            }
        }
        out
    };
    match class {
        ComponentClass::Large => {
            for (x, y) in pairs() {
                let p = Proposal { add: vec![x, y], remove: Vec::new(), case: GlueCase::LargeNeighbour };
                if let Some(r) = st.try_apply(&p, kind, Quarters::ZERO) {
                    return Ok(r);
                }
            }
        }
        ComponentClass::Cycle(4) | ComponentClass::Cycle(5) => {
            let own = component_edges(cg, h, a);
            for (x, y) in pairs() {
                let (u, v) = (end_a(x), end_a(y));
                let Some(e) = own.iter().copied().find(|&id| {
                    let ed = g.edge(id).unwrap();
                    (ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)
                }) else {
                    continue;
                };
                let p = Proposal { add: vec![x, y], remove: vec![e], case: GlueCase::CycleSwap };
                if let Some(r) = st.try_apply(&p, kind, Quarters::ZERO) {
                    return Ok(r);
                }
            }
        }
        ComponentClass::Cycle(6) | ComponentClass::Cycle(7) => {
            let (ga, labels) = g.induced_subgraph(&cg.members[a]);
            let own = component_edges(cg, h, a);
            for (x, y) in pairs() {
                let lu = labels.binary_search(&end_a(x)).unwrap();
                let lv = labels.binary_search(&end_a(y)).unwrap();
                let Some(walk) = hamiltonian_path_between(&ga, lu, lv) else { continue };
                let mut add = path_edges(&ga, &walk).unwrap();
                add.extend([x, y]);
                let p = Proposal { add, remove: own.clone(), case: GlueCase::HamiltonianSwap };
                if let Some(r) = st.try_apply(&p, kind, Quarters::ZERO) {
                    return Ok(r);
                }
            }
            let pendant = cg.neighbours(a).len() == 1;
            if !pendant && m.len() < 4 {
                return Err(Error::StructuredViolation(format!(
                    "non-pendant C{} node {a} has only a {}-matching to the huge node",
                    own.len(),
                    m.len()
                )));
            }
            let witness = certify_forced_subgraph(g, &cg.members[a], own.len(), Rational64::new(5, 4));
            return Err(Error::StructuredViolation(format!(
                "C{} node {a} admits no Hamiltonian swap; contractibility certificate: {witness:?}",
                own.len()
            )));
        }
        other => {
            return Err(Error::Invariant(format!("node {a} has non-canonical class {other:?}")));
        }
    }
    Err(Error::StructuredViolation(format!("no cost-neutral glue between huge node {l} and neighbour {a} ({class:?})")))
}

/// One gluing step when the huge node `l` lies in the non-trivial segment `s`.
pub fn glue_nontrivial_segment(
    g: &MultiGraph,
    h: &TwoEdgeCover,
    l: usize,
    s: &Segment,
    cfg: GlueConfig,
) -> Result<(TwoEdgeCover, GlueStep)> {
    let cg = build_component_graph(g, h);
    let st = Stepper::new(g, h);
    let kind = GlueKind::NonTrivialSegmentGlue;
    let small: Vec<usize> = s
        .nodes
        .iter()
        .copied()
        .filter(|&x| x != l)
        .filter(|&x| matches!(h.classes[cg.component_of_node[x]], ComponentClass::Cycle(4 | 5)))
        .collect();
    let budget = LadderBudget { cycle: cfg.cycle_budget, oracle: cfg.oracle_budget };
    let mut first_err = None;
    for &a in &small {
        let mut found = None;
        let res = ladder::ladder_search(g, h, &cg, &s.nodes, l, a, budget, &mut |out| {
            let p = ladder_proposal(&cg, h, a, out);
            match st.try_apply(&p, kind, Quarters::ZERO) {
                Some(r) => {
                    found = Some(r);
                    true
                }
                None => false,
            }
        });
        match res {
            Ok(_) => return Ok(found.expect("accepted outcome")),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_err {
        return Err(e);
    }
    // only large, C6 and C7 nodes: one edge per adjacent pair, cycle of length >= 3
    let mut in_s = vec![false; cg.node_count()];
    for &x in &s.nodes {
        in_s[x] = true;
    }
    let mut simple = MultiGraph::new(cg.node_count());
    simple.reserve_ids(cg.graph.next_id());
    let mut seen = BTreeSet::new();
    for e in cg.graph.edges() {
        if in_s[e.u] && in_s[e.v] && seen.insert((e.u.min(e.v), e.u.max(e.v))) {
            simple.add_edge_with_id(e.u, e.v, e.id)?;
        }
    }
    let k = shortest_cycle_through(&simple, l, Some(&in_s))
        .ok_or_else(|| Error::Invariant(format!("segment through node {l} has no cycle")))?;
    let p = Proposal { add: k, remove: Vec::new(), case: GlueCase::SegmentCycle };
    st.try_apply(&p, kind, Quarters::ZERO)
        .ok_or_else(|| Error::Invariant("segment cycle broke the cover contract".into()))
}

fn ladder_proposal(cg: &ComponentGraph, h: &TwoEdgeCover, a: usize, out: &LadderOutcome) -> Proposal {
    let mut add = out.cycle.clone();
    match &out.payload {
        LadderPayload::Path(p) => {
            add.extend(p.iter().copied());
            Proposal { add, remove: component_edges(cg, h, a), case: GlueCase::LadderPath(out.case) }
        }
        LadderPayload::Gadget { d, f } => {
            add.extend(f.iter().copied());
            let mut remove = component_edges(cg, h, a);
            remove.extend(component_edges(cg, h, *d));
            Proposal { add, remove, case: GlueCase::LadderGadget(out.case) }
        }
    }
}

/// Step-by-step gluing; keeps the steps taken so far when a step fails.
pub struct GlueMachine<'g> {
    g: &'g MultiGraph,
    cfg: GlueConfig,
    cover: TwoEdgeCover,
    pacman: Option<Vertex>,
    made_huge: bool,
    steps: Vec<GlueStep>,
}

impl<'g> GlueMachine<'g> {
    pub fn new(g: &'g MultiGraph, h: &TwoEdgeCover, ledger: &CreditLedger, cfg: GlueConfig) -> Result<Self> {
        if !h.is_bridgeless() {
            return Err(Error::Invariant("gluing needs a bridgeless cover".into()));
        }
        let v = check_canonical(h);
        if !v.is_empty() {
            return Err(Error::NotCanonical(describe_violations(&v)));
        }
        if credits_unchecked(h) != *ledger {
            return Err(Error::CreditInvariant("ledger does not match the cover".into()));
        }
        Ok(GlueMachine { g, cfg, cover: h.clone(), pacman: None, made_huge: false, steps: Vec::new() })
    }

    pub fn cover(&self) -> &TwoEdgeCover {
        &self.cover
    }

    pub fn steps(&self) -> &[GlueStep] {
        &self.steps
    }

    pub fn is_done(&self) -> bool {
        self.cover.component_count() <= 1
    }

    fn huge_vertex(&self) -> Option<Vertex> {
        let d = &self.cover.decomposition;
        (0..d.components.len())
            .filter(|&c| d.components[c].len() >= HUGE)
            .max_by_key(|&c| (d.components[c].len(), std::cmp::Reverse(c)))
            .map(|c| *d.components[c].iter().min().unwrap())
    }

    /// Performs one step; `Ok(None)` once a single component remains.
    pub fn step(&mut self) -> Result<Option<&GlueStep>> {
        if self.is_done() {
            return Ok(None);
        }
        if self.pacman.is_none() {
            self.pacman = self.huge_vertex();
        }
        let Some(p) = self.pacman else {
            if self.made_huge {
                return Err(Error::Invariant("no huge component after make_huge".into()));
            }
            let (next, step) = make_huge(self.g, &self.cover)?;
            self.made_huge = true;
            self.cover = next;
            self.steps.push(step);
            return Ok(self.steps.last());
        };
        let cg = build_component_graph(self.g, &self.cover);
        let l = cg.node_of[p];
        let segments = compute_segments(&cg);
        let s = segments.iter().find(|s| !s.trivial && s.nodes.contains(&l));
        let (next, step) = match s {
            Some(s) => glue_nontrivial_segment(self.g, &self.cover, l, s, self.cfg)?,
            None => glue_trivial_segment(self.g, &self.cover, l)?,
        };
        let c = next.decomposition.component_of[p];
        if next.decomposition.components[c].len() < HUGE {
            return Err(Error::Invariant("the huge component shrank".into()));
        }
        self.cover = next;
        self.steps.push(step);
        Ok(self.steps.last())
    }
}

/// Glues until one 2-edge-connected spanning component remains.
pub fn glue_all(g: &MultiGraph, h: &TwoEdgeCover, ledger: &CreditLedger, cfg: GlueConfig) -> Result<GlueOutcome> {
    let mut m = GlueMachine::new(g, h, ledger, cfg)?;
    while m.step()?.is_some() {}
    Ok(GlueOutcome { cover: m.cover, steps: m.steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSubset;
    use crate::oracle::verify_2ecss;

    fn cycle_edges(start: usize, len: usize) -> Vec<(usize, usize)> {
        (0..len).map(|i| (start + i, start + (i + 1) % len)).collect()
    }

    fn setup(n: usize, e: &[(usize, usize)], cover: usize) -> (MultiGraph, TwoEdgeCover) {
        let g = MultiGraph::from_edges(n, e).unwrap();
        let h: EdgeSubset = (0..cover as u32).map(EdgeId).collect();
        let h = TwoEdgeCover::new(&g, h, false);
        (g, h)
    }

    #[test]
    fn ring_of_three_squares_becomes_huge() {
        let mut e = cycle_edges(0, 4);
        e.extend(cycle_edges(4, 4));
        e.extend(cycle_edges(8, 4));
        e.extend([(1, 4), (6, 8), (10, 3)]);
        let (g, h) = setup(12, &e, 12);
        let (out, step) = make_huge(&g, &h).unwrap();
        assert_eq!(out.component_count(), 1);
        assert_eq!(step.case, GlueCase::OneCycle);
        assert!(step.delta <= Quarters::whole(3));
    }

    #[test]
    fn ring_of_five_squares_glues() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.extend(cycle_edges(4 * i, 4));
        }
        for i in 0..5 {
            e.push((4 * i + 1, (4 * i + 6) % 20));
            e.push((4 * i + 2, (4 * i + 7) % 20));
        }
        let (g, h) = setup(20, &e, 20);
        let l = credits_unchecked(&h);
        let out = glue_all(&g, &h, &l, GlueConfig::default()).unwrap();
        assert!(verify_2ecss(&g, &out.cover.edges));
        assert!(out.steps.len() <= 5);
        let total: Quarters = out.steps.iter().map(|s| s.delta).sum();
        assert!(total <= Quarters::whole(3));
    }

    #[test]
    fn single_component_is_identity() {
        let (g, h) = setup(6, &cycle_edges(0, 6), 6);
        let l = credits_unchecked(&h);
        let out = glue_all(&g, &h, &l, GlueConfig::default()).unwrap();
        assert!(out.steps.is_empty());
        assert_eq!(out.cover.edges, h.edges);
    }
}
