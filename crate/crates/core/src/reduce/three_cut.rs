//! Removing a large 3-vertex cut.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::patch::min_patch;
use super::trace::{C2Subcase, Part, ThreeCutBranch, TraceNode};
use super::types::{min_subgraph_of_shape, min_subgraph_of_shape_below, Shape, SolutionType};
use super::ReductionConfig;
use crate::error::{Error, Result};
use crate::graph::connectivity::{components, is_2ec_spanning_mask, Host};
use crate::graph::cuts::{vertex_cuts, CutKind};
use crate::graph::{is_two_edge_connected, EdgeId, EdgeSubset, MultiGraph, Vertex};

/// Smallest side size on either side of a large cut.
pub const MIN_SIDE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeCutSplit {
    pub cut: [Vertex; 3],
    /// `V_1`, with `MIN_SIDE <= |V_1| <= |V_2|`.
    pub small: Vec<Vertex>,
    pub large: Vec<Vertex>,
}

pub type Recurse<'a> = dyn FnMut(&MultiGraph) -> Result<(EdgeSubset, TraceNode)> + 'a;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCutResolution {
    pub edges: EdgeSubset,
    pub branch: ThreeCutBranch,
    pub t_min: Option<SolutionType>,
    /// Minimum size per type on the small side, when computed.
    pub opt_by_type: BTreeMap<SolutionType, usize>,
    pub fixed: EdgeSubset,
    pub parts: Vec<Part>,
    pub patch: EdgeSubset,
    pub accounting: Option<i64>,
    /// Set when a fallback was taken.
    pub uncertified: bool,
}

/// First large 3-vertex cut (lexicographic) whose residual components can
/// be grouped into two sides of at least `MIN_SIDE` vertices each.
pub fn find_large_split(g: &MultiGraph) -> Option<ThreeCutSplit> {
    vertex_cuts(g, 3).into_iter().filter(|c| c.kind == CutKind::ThreeLarge).find_map(|c| {
        let (small, large) = partition(&c.residual)?;
        Some(ThreeCutSplit { cut: [c.cut[0], c.cut[1], c.cut[2]], small, large })
    })
}

/// Groups components so that the smaller side is as small as allowed.
fn partition(residual: &[Vec<Vertex>]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let sizes: Vec<usize> = residual.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();
    let k = sizes.len();
    let mut reach = vec![vec![false; total + 1]; k + 1];
    reach[0][0] = true;
    for i in 0..k {
        for s in 0..=total {
            if reach[i][s] {
                reach[i + 1][s] = true;
                reach[i + 1][s + sizes[i]] = true;
            }
        }
    }
    let target = (MIN_SIDE..=total / 2).find(|&s| reach[k][s] && total - s >= MIN_SIDE)?;
    let mut s = target;
    let mut pick = vec![false; k];
    for i in (0..k).rev() {
        if !reach[i][s] {
            pick[i] = true;
            s -= sizes[i];
        }
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    for (i, comp) in residual.iter().enumerate() {
        if pick[i] { &mut small } else { &mut large }.extend(comp.iter().copied());
    }
    small.sort_unstable();
    large.sort_unstable();
    Some((small, large))
}

struct Sides {
    g1: MultiGraph,
    labels1: Vec<Vertex>,
    cut1: [Vertex; 3],
    g2: MultiGraph,
    cut2: [Vertex; 3],
}

fn sides(g: &MultiGraph, split: &ThreeCutSplit) -> Sides {
    let closed = |vs: &[Vertex]| {
        let mut all = vs.to_vec();
        all.extend(split.cut);
        g.induced_subgraph(&all)
    };
    let (g1, labels1) = closed(&split.small);
    let (g2_full, labels2) = closed(&split.large);
    let at = |labels: &[Vertex], x: Vertex| labels.binary_search(&x).expect("cut vertex present");
    let cut1 = split.cut.map(|c| at(&labels1, c));
    let cut2 = split.cut.map(|c| at(&labels2, c));
    // edges among the cut vertices belong to the small side only
    let chords: EdgeSubset =
        g2_full.edges().iter().filter(|e| cut2.contains(&e.u) && cut2.contains(&e.v)).map(|e| e.id).collect();
    let g2 = g2_full.without_edges(&chords);
    Sides { g1, labels1, cut1, g2, cut2 }
}

pub fn handle_large_3vc(
    g: &MultiGraph,
    split: &ThreeCutSplit,
    cfg: &ReductionConfig,
    recurse: &mut Recurse<'_>,
) -> Result<ThreeCutResolution> {
    let s = sides(g, split);
    let threshold = Rational64::from_integer(2) / cfg.epsilon - Rational64::from_integer(4);
    if Rational64::from_integer(split.small.len() as i64) > threshold {
        return both_large(g, &s, recurse, ThreeCutBranch::BothLarge);
    }
    match one_small(g, &s, cfg, recurse) {
        Err(
            e @ (Error::BudgetExceeded(_)
            | Error::PatchNotFound { .. }
            | Error::NotTwoEdgeConnected
            | Error::StructuredViolation(_)),
        ) => {
            let mut r = both_large(g, &s, recurse, ThreeCutBranch::Fallback(e.kind().to_string()))?;
            r.uncertified = true;
            Ok(r)
        }
        other => other,
    }
}

fn both_large(
    g: &MultiGraph,
    s: &Sides,
    recurse: &mut Recurse<'_>,
    branch: ThreeCutBranch,
) -> Result<ThreeCutResolution> {
    let g1c = s.g1.contract_dropping_loops(&s.cut1)?.graph;
    let g2c = s.g2.contract_dropping_loops(&s.cut2)?.graph;
    let (h1, t1) = recurse(&g1c)?;
    let (h2, t2) = recurse(&g2c)?;
    let base = h1.union(&h2);
    let patch = min_patch(g, &base, 4)?;
    Ok(ThreeCutResolution {
        edges: base.union(&patch),
        branch,
        t_min: None,
        opt_by_type: BTreeMap::new(),
        fixed: EdgeSubset::new(),
        parts: vec![Part::plain(t1), Part::plain(t2)],
        patch,
        accounting: None,
        uncertified: false,
    })
}

/// Gadget vertex: a cut vertex by role index, or the k-th new vertex.
#[derive(Clone, Copy)]
enum Gv {
    Cut(usize),
    New(usize),
}

fn gadget(s: &Sides, fresh: usize, edges: &[(Gv, Gv)]) -> Result<(MultiGraph, Vec<EdgeId>)> {
    let mut gg = s.g2.clone();
    let base = gg.vertex_count();
    for _ in 0..fresh {
        gg.add_vertex();
    }
    let at = |x: Gv| match x {
        Gv::Cut(i) => s.cut2[i],
        Gv::New(k) => base + k,
    };
    let mut dummies = Vec::new();
    for &(a, b) in edges {
        dummies.push(gg.add_edge(at(a), at(b))?);
    }
    if !is_two_edge_connected(&gg) {
        return Err(Error::NotTwoEdgeConnected);
    }
    Ok((gg, dummies))
}

/// Necessary for compatibility: contracting each solution component of a
/// `shape` solution turns `S + E(G2)` into `G2` with the grouped cut vertices
/// merged, and contraction keeps 2-edge-connectivity.
fn quotient_is_2ec(g2: &MultiGraph, cut2: [Vertex; 3], shape: Shape) -> Result<bool> {
    let mut q = g2.clone();
    let mut at: Vec<Vertex> = (0..g2.vertex_count()).collect();
    for group in shape.cut_groups() {
        let vs: Vec<Vertex> = group.iter().map(|&i| at[cut2[i]]).collect();
        if vs.len() > 1 {
            let c = q.contract(&vs)?;
            for a in &mut at {
                *a = c.vertex_map[*a];
            }
            q = c.graph;
        }
    }
    Ok(is_two_edge_connected(&q))
}

fn one_small(
    g: &MultiGraph,
    s: &Sides,
    cfg: &ReductionConfig,
    recurse: &mut Recurse<'_>,
) -> Result<ThreeCutResolution> {
    let host = Host::new(g);
    let g2_mask = host.mask(&s.g2.edge_ids());
    let mut compat = |h: &EdgeSubset| {
        let mut m = g2_mask.clone();
        for id in h {
            if let Some(i) = g.index_of(id) {
                m[i] = true;
            }
        }
        is_2ec_spanning_mask(&host, &m)
    };

    let mut shapes = Vec::new();
    for shape in Shape::ALL {
        if quotient_is_2ec(&s.g2, s.cut2, shape)? {
            shapes.push(shape);
        }
    }
    let mut by_shape: BTreeMap<Shape, EdgeSubset> = BTreeMap::new();
    // A is contracted unless some other shape beats opt(A) / alpha, so
    // look for those first and only then search the rest in full
    let mut limit = usize::MAX;
    if shapes.contains(&Shape::A) {
        if let Some(h) = min_subgraph_of_shape(&s.g1, s.cut1, Shape::A, &mut compat, cfg.typed_budget)? {
            limit = (Rational64::from_integer(h.len() as i64) / cfg.alpha).ceil().to_integer().max(0) as usize;
            by_shape.insert(Shape::A, h);
        }
    }
    let rest: Vec<Shape> = shapes.into_iter().filter(|&x| x != Shape::A).collect();
    for &shape in &rest {
        let found = min_subgraph_of_shape_below(&s.g1, s.cut1, shape, &mut compat, cfg.typed_budget, limit)?;
        if let Some(h) = found {
            by_shape.insert(shape, h);
        }
    }
    if by_shape.len() > 1 {
        for &shape in &rest {
            if let std::collections::btree_map::Entry::Vacant(e) = by_shape.entry(shape) {
                if let Some(h) = min_subgraph_of_shape(&s.g1, s.cut1, shape, &mut compat, cfg.typed_budget)? {
                    e.insert(h);
                }
            }
        }
    }
    let mut best: BTreeMap<SolutionType, (Shape, usize)> = BTreeMap::new();
    for (&shape, h) in &by_shape {
        let t = shape.solution_type();
        if best.get(&t).is_none_or(|&(_, k)| h.len() < k) {
            best.insert(t, (shape, h.len()));
        }
    }
    let opt_by_type: BTreeMap<SolutionType, usize> = best.iter().map(|(&t, &(_, k))| (t, k)).collect();
    let t_min = SolutionType::ALL
        .into_iter()
        .filter(|t| opt_by_type.contains_key(t))
        .min_by_key(|t| (opt_by_type[t], *t))
        .ok_or(Error::Untypeable)?;
    let opt_min = opt_by_type[&t_min];
    let rep = |t: SolutionType| by_shape[&best[&t].0].clone();

    let mut out = ThreeCutResolution {
        edges: EdgeSubset::new(),
        branch: ThreeCutBranch::BothLarge,
        t_min: Some(t_min),
        opt_by_type: opt_by_type.clone(),
        fixed: EdgeSubset::new(),
        parts: Vec::new(),
        patch: EdgeSubset::new(),
        accounting: None,
        uncertified: false,
    };

    if let Some(&opt_a) = opt_by_type.get(&SolutionType::A) {
        let cheap = Rational64::from_integer(opt_a as i64) <= cfg.alpha * Rational64::from_integer(opt_min as i64);
        if t_min == SolutionType::A || cheap {
            let fixed = rep(SolutionType::A);
            let child = g.contract_dropping_loops(&s.labels1)?.graph;
            let (h, t) = recurse(&child)?;
            out.branch = ThreeCutBranch::ContractA;
            out.edges = fixed.union(&h);
            out.fixed = fixed;
            out.parts = vec![Part::plain(t)];
            return Ok(out);
        }
    }

    let simple = if opt_by_type.get(&SolutionType::B1).is_some_and(|&k| k <= opt_min + 1) {
        Some((ThreeCutBranch::B1, SolutionType::B1, 1))
    } else {
        match t_min {
            SolutionType::B2 => Some((ThreeCutBranch::B2, SolutionType::B2, 2)),
            SolutionType::C1 => Some((ThreeCutBranch::C1, SolutionType::C1, 2)),
            _ => None,
        }
    };
    if let Some((branch, t, bound)) = simple {
        let fixed = rep(t);
        let g2c = s.g2.contract_dropping_loops(&s.cut2)?.graph;
        let (h2, t2) = recurse(&g2c)?;
        let base = fixed.union(&h2);
        let patch = min_patch(g, &base, bound)?;
        out.branch = branch;
        out.edges = base.union(&patch);
        out.fixed = fixed;
        out.parts = vec![Part::plain(t2)];
        out.patch = patch;
        return Ok(out);
    }

    if t_min == SolutionType::C2 {
        return c2_branch(g, s, &by_shape, opt_min, recurse, out);
    }
    if t_min == SolutionType::C3 {
        return c3_branch(g, s, rep(SolutionType::C3), recurse, out);
    }
    Err(Error::Invariant(format!("no branch for minimum type {t_min:?}")))
}

fn c2_branch(
    g: &MultiGraph,
    s: &Sides,
    by_shape: &BTreeMap<Shape, EdgeSubset>,
    opt: usize,
    recurse: &mut Recurse<'_>,
    mut out: ThreeCutResolution,
) -> Result<ThreeCutResolution> {
    let optimal: Vec<usize> =
        (0..3).filter(|&z| by_shape.get(&Shape::C2 { lone: z }).is_some_and(|h| h.len() == opt)).collect();
    let others = |z: usize| -> (usize, usize) {
        let mut o = (0..3).filter(|&i| i != z);
        (o.next().unwrap(), o.next().unwrap())
    };
    use Gv::{Cut, New};
    let (subcase, fresh, edges, limit) = match optimal.as_slice() {
        [z] => {
            let (u, v) = others(*z);
            (C2Subcase::PathUv, 1, vec![(Cut(u), New(0)), (Cut(v), New(0)), (Cut(v), Cut(*z))], -2)
        }
        [a, b] => {
            let v = (0..3).find(|i| !optimal.contains(i)).unwrap();
            let (u, w) = (*a, *b);
            (C2Subcase::SharedEnd, 2, vec![(Cut(u), New(0)), (Cut(v), New(1)), (New(1), New(0)), (Cut(w), New(0))], -3)
        }
        _ => (C2Subcase::Any, 1, vec![(Cut(0), New(0)), (Cut(1), New(0)), (Cut(2), New(0))], -2),
    };
    let (gg, dummies) = gadget(s, fresh, &edges)?;
    let (h, t) = recurse(&gg)?;
    let stripped: EdgeSubset = h.iter().filter(|e| !dummies.contains(e)).collect();

    let mut chosen: Option<(EdgeSubset, EdgeSubset)> = None;
    for &z in &optimal {
        let fixed = &by_shape[&Shape::C2 { lone: z }];
        if let Ok(f) = min_patch(g, &fixed.union(&stripped), 1) {
            if chosen.as_ref().is_none_or(|(_, best)| f.len() < best.len()) {
                chosen = Some((fixed.clone(), f));
            }
        }
    }
    let (fixed, patch) = chosen.ok_or(Error::PatchNotFound { bound: 1 })?;
    let accounting = patch.len() as i64 - h.len() as i64 + stripped.len() as i64;
    if accounting > limit {
        return Err(Error::Invariant(format!("C2 {subcase:?}: accounting {accounting} exceeds {limit}")));
    }
    out.branch = ThreeCutBranch::C2(subcase);
    out.edges = fixed.union(&stripped).union(&patch);
    out.fixed = fixed;
    out.parts = vec![Part { dummies, trace: t }];
    out.patch = patch;
    out.accounting = Some(accounting);
    Ok(out)
}

fn c3_branch(
    g: &MultiGraph,
    s: &Sides,
    fixed: EdgeSubset,
    recurse: &mut Recurse<'_>,
    mut out: ThreeCutResolution,
) -> Result<ThreeCutResolution> {
    let host = Host::new(&s.g1);
    let (comp, _) = components(&host, &host.mask(&fixed));
    let linked = |a: usize, b: usize| {
        let (ca, cb) = (comp[s.cut1[a]], comp[s.cut1[b]]);
        s.g1.edges().iter().any(|e| {
            !fixed.contains(e.id) && ((comp[e.u] == ca && comp[e.v] == cb) || (comp[e.u] == cb && comp[e.v] == ca))
        })
    };
    let v = (0..3)
        .find(|&v| (0..3).filter(|&x| x != v).all(|x| linked(v, x)))
        .ok_or_else(|| Error::StructuredViolation("C3 solution has no linked middle component".into()))?;
    let mut o = (0..3).filter(|&i| i != v);
    let (u, w) = (o.next().unwrap(), o.next().unwrap());
    use Gv::Cut;
    let (gg, dummies) = gadget(s, 0, &[(Cut(u), Cut(v)), (Cut(u), Cut(v)), (Cut(v), Cut(w)), (Cut(v), Cut(w))])?;
    let (h, t) = recurse(&gg)?;
    let stripped: EdgeSubset = h.iter().filter(|e| !dummies.contains(e)).collect();
    let base = fixed.union(&stripped);
    let patch = min_patch(g, &base, 4)?;
    let accounting = patch.len() as i64 - h.len() as i64 + stripped.len() as i64;
    if accounting > 0 {
        return Err(Error::Invariant(format!("C3: accounting {accounting} exceeds 0")));
    }
    out.branch = ThreeCutBranch::C3;
    out.edges = base.union(&patch);
    out.fixed = fixed;
    out.parts = vec![Part { dummies, trace: t }];
    out.patch = patch;
    out.accounting = Some(accounting);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_prefers_small_side() {
        let residual = vec![vec![0, 1, 2, 3, 4, 5, 6, 7], vec![8; 3], vec![9; 4], vec![10; 7]];
        let (small, large) = partition(&residual).unwrap();
        assert_eq!(small.len(), 7);
        assert_eq!(large.len(), 15);
    }

    #[test]
    fn partition_needs_two_big_sides() {
        let residual = vec![vec![0; 6], vec![1; 20]];
        assert!(partition(&residual).is_none());
    }
}
