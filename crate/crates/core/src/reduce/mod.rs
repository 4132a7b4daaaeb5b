//! Recursive reduction of a 2-edge-connected graph to structured leaves.

pub mod patch;
pub mod three_cut;
pub mod trace;
pub mod types;

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

pub use patch::min_patch;
pub use three_cut::{find_large_split, handle_large_3vc, ThreeCutResolution, ThreeCutSplit};
pub use trace::{C2Subcase, DeletionReason, Part, ReductionTrace, ThreeCutBranch, TraceNode, TraceStep};
pub use types::{classify_shape, classify_solution_type, enumerate_min_typed_subgraph, Shape, SolutionType};

use crate::error::{Error, Result};
use crate::graph::cuts::{residual_components, vertex_cuts, CutKind};
use crate::graph::{
    cut_vertices, find_contractible_certificate, is_two_edge_connected, EdgeId, EdgeSubset, MultiGraph,
};
use crate::oracle::{exact_min_2ecss, verify_2ecss, DEFAULT_ORACLE_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionConfig {
    pub alpha: Rational64,
    pub epsilon: Rational64,
    /// Largest vertex count `n₀` solved exactly.
    pub enumeration_budget: usize,
    /// Node budget of each exact solve.
    pub oracle_budget: u64,
    /// Node budget of each typed-subgraph search.
    pub typed_budget: u64,
    /// Graphs up to this many vertices also try exactly certified contractions.
    pub contract_oracle_vertices: usize,
}

impl Default for ReductionConfig {
    fn default() -> Self {
        ReductionConfig {
            alpha: Rational64::new(5, 4),
            epsilon: Rational64::new(1, 24),
            enumeration_budget: 12,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            typed_budget: 300_000,
            contract_oracle_vertices: 12,
        }
    }
}

impl ReductionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alpha < Rational64::new(5, 4) {
            return Err(Error::InvalidParameter(format!("alpha {} is below 5/4", self.alpha)));
        }
        if self.epsilon <= Rational64::from_integer(0) || self.epsilon > Rational64::new(1, 24) {
            return Err(Error::InvalidParameter(format!("epsilon {} is outside (0, 1/24]", self.epsilon)));
        }
        if self.enumeration_budget < 3 {
            return Err(Error::InvalidParameter("enumeration budget must be at least 3".into()));
        }
        Ok(())
    }

    /// `floor(k / ε)`.
    fn over_epsilon(&self, k: i64) -> usize {
        (Rational64::from_integer(k) / self.epsilon).floor().to_integer().max(0) as usize
    }
}

/// Callback solving a graph that no reduction step applies to.
pub type StructuredSolver<'a> = dyn FnMut(&MultiGraph) -> Result<EdgeSubset> + 'a;

/// Reduces `g` and returns a 2-ECSS of it together with the trace.
pub fn reduce(
    g: &MultiGraph,
    cfg: &ReductionConfig,
    structured_solver: &mut StructuredSolver<'_>,
) -> Result<(EdgeSubset, ReductionTrace)> {
    cfg.validate()?;
    let mut r = Reducer { cfg, solver: structured_solver, certified: true };
    let (h, root) = r.run(g)?;
    let trace = ReductionTrace {
        alpha: cfg.alpha,
        epsilon: cfg.epsilon,
        enumeration_budget: cfg.enumeration_budget,
        certified: r.certified,
        root,
    };
    Ok((h, trace))
}

struct Reducer<'a, 'b> {
    cfg: &'a ReductionConfig,
    solver: &'a mut StructuredSolver<'b>,
    certified: bool,
}

impl Reducer<'_, '_> {
    fn run(&mut self, g: &MultiGraph) -> Result<(EdgeSubset, TraceNode)> {
        if !is_two_edge_connected(g) {
            return Err(Error::NotTwoEdgeConnected);
        }
        let (h, step) = self.dispatch(g)?;
        if !verify_2ecss(g, &h) {
            return Err(Error::Infeasible(format!(
                "reduction returned a non-spanning or bridged subgraph on {} vertices",
                g.vertex_count()
            )));
        }
        let node = TraceNode { vertices: g.vertex_count(), edges: g.edge_count(), returned: h.len(), step };
        Ok((h, node))
    }

    fn dispatch(&mut self, g: &MultiGraph) -> Result<(EdgeSubset, TraceStep)> {
        let n = g.vertex_count();
        let cfg = self.cfg;
        let small = cfg.over_epsilon(4);
        if n <= 1 {
            return Ok((EdgeSubset::new(), TraceStep::BruteForce { solution: EdgeSubset::new(), certified: true }));
        }
        if n <= small.min(cfg.enumeration_budget) {
            let r = exact_min_2ecss(g, cfg.oracle_budget)?;
            self.certified &= r.certified;
            let solution = r.witness;
            return Ok((solution.clone(), TraceStep::BruteForce { solution, certified: r.certified }));
        }
        if n <= small {
            self.certified = false;
        }

        if let Some(&v) = cut_vertices(g).first() {
            let comps = residual_components(g, &[v]);
            let mut first = comps[0].clone();
            first.push(v);
            let mut rest: Vec<_> = comps[1..].iter().flatten().copied().collect();
            rest.push(v);
            let mut parts = Vec::new();
            let mut h = EdgeSubset::new();
            for side in [first, rest] {
                let (sub, _) = g.induced_subgraph(&side);
                let (hs, t) = self.run(&sub)?;
                h.extend(hs.iter());
                parts.push(Part::plain(t));
            }
            return Ok((h, TraceStep::OneCut { cut: v, parts }));
        }

        let redundant = loops_and_parallels(g);
        if !redundant.is_empty() {
            return self.delete(g, redundant, DeletionReason::LoopOrParallel);
        }

        if let Some(cert) =
            find_contractible_certificate(g, cfg.alpha, cfg.over_epsilon(2), cfg.contract_oracle_vertices)
        {
            let child = g.contract_dropping_loops(&cert.vertices)?.graph;
            let (hc, t) = self.run(&child)?;
            let h = cert.edges.union(&hc);
            return Ok((
                h,
                TraceStep::Contracted {
                    vertices: cert.vertices,
                    cycle: cert.edges,
                    justification: cert.justification,
                    child: Box::new(t),
                },
            ));
        }

        let irrelevant = irrelevant_edges(g);
        if !irrelevant.is_empty() {
            return self.delete(g, irrelevant, DeletionReason::Irrelevant);
        }

        if let Some(c) = vertex_cuts(g, 2).into_iter().find(|c| c.kind == CutKind::TwoNonIsolating) {
            self.certified = false;
            let cut = [c.cut[0], c.cut[1]];
            let mut parts = Vec::new();
            let mut base = EdgeSubset::new();
            for side in [&c.side_a, &c.side_b] {
                let mut vs = side.clone();
                vs.extend(cut);
                let (sub, labels) = g.induced_subgraph(&vs);
                let local = cut.map(|x| labels.binary_search(&x).expect("cut vertex present"));
                let child = sub.contract_dropping_loops(&local)?.graph;
                let (hs, t) = self.run(&child)?;
                base.extend(hs.iter());
                parts.push(Part::plain(t));
            }
            let patch = min_patch(g, &base, 2)?;
            return Ok((base.union(&patch), TraceStep::TwoCut { cut, parts, patch }));
        }

        if let Some(split) = find_large_split(g) {
            let res = handle_large_3vc(g, &split, cfg, &mut |sub: &MultiGraph| self.run(sub))?;
            if res.uncertified {
                self.certified = false;
            }
            let step = TraceStep::ThreeCut {
                cut: split.cut,
                small_side: split.small.len(),
                large_side: split.large.len(),
                branch: res.branch,
                t_min: res.t_min,
                fixed: res.fixed,
                parts: res.parts,
                patch: res.patch,
                accounting: res.accounting,
            };
            return Ok((res.edges, step));
        }

        let solution = (self.solver)(g)?;
        Ok((solution.clone(), TraceStep::Structured { solution }))
    }

    fn delete(
        &mut self,
        g: &MultiGraph,
        edges: Vec<EdgeId>,
        reason: DeletionReason,
    ) -> Result<(EdgeSubset, TraceStep)> {
        let drop: EdgeSubset = edges.iter().copied().collect();
        let (h, t) = self.run(&g.without_edges(&drop))?;
        Ok((h, TraceStep::Deleted { reason, edges, child: Box::new(t) }))
    }
}

/// Every loop and every parallel copy except the smallest id.
fn loops_and_parallels(g: &MultiGraph) -> Vec<EdgeId> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for e in g.edges() {
        if e.is_loop() || seen.insert((e.u.min(e.v), e.u.max(e.v)), e.id).is_some() {
            out.push(e.id);
        }
    }
    out
}

/// Edges whose endpoints form a 2-vertex cut.
fn irrelevant_edges(g: &MultiGraph) -> Vec<EdgeId> {
    if g.vertex_count() < 4 {
        return Vec::new();
    }
    g.edges().iter().filter(|e| !e.is_loop() && residual_components(g, &[e.u, e.v]).len() >= 2).map(|e| e.id).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub vertices: usize,
    pub returned: usize,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub bound: Option<Rational64>,
    /// The additive bound is checked only for certified runs above `4/ε` vertices.
    pub bound_applies: bool,
    pub bound_holds: Option<bool>,
    pub certified: bool,
    pub replay_matches: bool,
}

/// Compares the returned size against `opt`, and against
/// `α·opt + 4ε|V| - 4` where that bound applies.
pub fn verify_approx_bound(trace: &ReductionTrace, returned: &EdgeSubset, opt: Option<usize>) -> ApproxReport {
    let n = trace.root.vertices;
    let size = trace.root.returned;
    let ratio = opt.map(|o| if o == 0 { 1.0 } else { size as f64 / o as f64 });
    let large = Rational64::from_integer(n as i64) > Rational64::from_integer(4) / trace.epsilon;
    let bound = opt.map(|o| {
        trace.alpha * Rational64::from_integer(o as i64) + Rational64::from_integer(4 * n as i64) * trace.epsilon
            - Rational64::from_integer(4)
    });
    let bound_applies = large && trace.certified && opt.is_some();
    let bound_holds = bound.filter(|_| bound_applies).map(|b| Rational64::from_integer(size as i64) <= b);
    ApproxReport {
        vertices: n,
        returned: size,
        opt,
        ratio,
        bound,
        bound_applies,
        bound_holds,
        certified: trace.certified,
        replay_matches: &trace.replay() == returned,
    }
}
