//! End-to-end run: reduction, then per structured leaf the cover, bridge
//! covering and gluing phases, with verification and an optional oracle.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bridge::{cover_bridges, BridgeConfig, BridgeIteration};
use crate::cover::{canonicalize, min_triangle_free_cover, CoverBudget, TwoEdgeCover};
use crate::credit::{cost, init_credits, lemma_bound_check, Quarters};
use crate::error::Error;
use crate::glue::{GlueConfig, GlueMachine, GlueStep};
use crate::graph::connectivity::{is_2ec_spanning_mask, Host};
use crate::graph::{EdgeSubset, MultiGraph};
use crate::io::fingerprint;
use crate::oracle::{exact_min_2ecss, verify_2ecss};
use crate::reduce::{reduce, verify_approx_bound, ApproxReport, ReductionConfig, ReductionTrace};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMode {
    Off,
    /// Only when the input has at most `oracle_max_vertices` vertices.
    Auto,
    Force,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub reduction: ReductionConfig,
    pub cover: CoverBudget,
    pub bridge: BridgeConfig,
    pub glue: GlueConfig,
    pub oracle: OracleMode,
    pub oracle_max_vertices: usize,
    /// Fail on the first phase error instead of repairing the leaf.
    pub strict: bool,
    /// Record wall times. Off by default so reports are reproducible.
    pub timings: bool,
    pub include_trace: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            reduction: ReductionConfig::default(),
            cover: CoverBudget::default(),
            bridge: BridgeConfig::default(),
            glue: GlueConfig::default(),
            oracle: OracleMode::Auto,
            oracle_max_vertices: 14,
            strict: false,
            timings: false,
            include_trace: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Input,
    Reduce,
    Cover,
    Canonicalize,
    Credits,
    BridgeCover,
    Glue,
    Verify,
    Oracle,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned));
        f.write_str(s.as_deref().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseError {
    pub phase: Phase,
    pub error: Error,
}

impl fmt::Display for PhaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.phase, self.error)
    }
}

impl std::error::Error for PhaseError {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fallback {
    pub phase: Phase,
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafReport {
    pub vertices: usize,
    pub edges: usize,
    pub cover_size: Option<usize>,
    pub cover_certified: Option<bool>,
    pub canonical_size: Option<usize>,
    pub canonical_cost: Option<Quarters>,
    /// `cost(H) <= 5/4 |H|` for the canonical cover.
    pub cost_bound_holds: Option<bool>,
    /// The per-component size conditions as well.
    pub lemma_bound_holds: Option<bool>,
    pub bridge_iterations: Vec<BridgeIteration>,
    pub post_bridge_cost: Option<Quarters>,
    pub glue_steps: Vec<GlueStep>,
    pub final_size: usize,
    pub fallback: Option<Fallback>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFingerprint {
    pub vertices: usize,
    pub edges: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub alpha: String,
    pub epsilon: String,
    pub enumeration_budget: usize,
    pub oracle_budget: u64,
    pub typed_budget: u64,
    pub oracle: OracleMode,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub value: usize,
    pub certified: bool,
    pub nodes_explored: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimes {
    pub reduce_ms: f64,
    pub leaves_ms: f64,
    pub oracle_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub input: InputFingerprint,
    pub config: ConfigEcho,
    pub leaves: Vec<LeafReport>,
    pub structured_leaves: usize,
    pub final_size: usize,
    pub verified: bool,
    pub solution: EdgeSubset,
    pub oracle: Option<OracleRecord>,
    pub approx: ApproxReport,
    /// Reduction kept its guarantee and no leaf needed repair.
    pub certified: bool,
    pub timings: Option<PhaseTimes>,
    pub trace: Option<ReductionTrace>,
}

/// A graph and highlighted edges captured for DOT export.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub label: String,
    pub graph: MultiGraph,
    pub edges: EdgeSubset,
}

pub fn run_pipeline(g: &MultiGraph, cfg: &PipelineConfig) -> Result<RunReport, PhaseError> {
    run(g, cfg, None)
}

/// Like [`run_pipeline`], also collecting one snapshot per phase.
pub fn run_pipeline_with_snapshots(
    g: &MultiGraph,
    cfg: &PipelineConfig,
) -> Result<(RunReport, Vec<Snapshot>), PhaseError> {
    let mut snaps = Vec::new();
    let r = run(g, cfg, Some(&mut snaps))?;
    Ok((r, snaps))
}

fn run(g: &MultiGraph, cfg: &PipelineConfig, mut snaps: Option<&mut Vec<Snapshot>>) -> Result<RunReport, PhaseError> {
    let tag = |phase: Phase| move |error: Error| PhaseError { phase, error };
    cfg.reduction.validate().map_err(tag(Phase::Input))?;
    if let Some(s) = snaps.as_deref_mut() {
        s.push(Snapshot { label: "input".into(), graph: g.clone(), edges: g.edge_ids() });
    }

    let t0 = Instant::now();
    let mut leaves: Vec<LeafReport> = Vec::new();
    let mut failed_phase = None;
    let mut leaf_snaps = Vec::new();
    let mut leaves_ms = 0.0;
    let mut solver = |leaf: &MultiGraph| -> crate::Result<EdgeSubset> {
        let idx = leaves.len();
        let started = Instant::now();
        let (h, report) = solve_leaf(leaf, cfg, idx, snaps.is_some().then_some(&mut leaf_snaps));
        leaves_ms += started.elapsed().as_secs_f64() * 1e3;
        match report {
            Ok(rep) => {
                leaves.push(rep);
                Ok(h)
            }
            Err(e) => {
                failed_phase = Some(e.phase);
                Err(e.error)
            }
        }
    };
    let reduced = reduce(g, &cfg.reduction, &mut solver);
    let (h, trace) = reduced.map_err(|e| PhaseError { phase: failed_phase.unwrap_or(Phase::Reduce), error: e })?;
    // reduction time excludes the leaves it called into
    let reduce_ms = t0.elapsed().as_secs_f64() * 1e3 - leaves_ms;
    if let Some(s) = snaps {
        s.extend(leaf_snaps);
        s.push(Snapshot { label: "output".into(), graph: g.clone(), edges: h.clone() });
    }

    let verified = verify_2ecss(g, &h);
    if !verified {
        return Err(PhaseError {
            phase: Phase::Verify,
            error: Error::Infeasible("pipeline output is not a 2-ECSS".into()),
        });
    }

    let t1 = Instant::now();
    let oracle = match cfg.oracle {
        OracleMode::Off => None,
        OracleMode::Auto if g.vertex_count() > cfg.oracle_max_vertices => None,
        _ => {
            let r = exact_min_2ecss(g, cfg.reduction.oracle_budget).map_err(tag(Phase::Oracle))?;
            Some(OracleRecord { value: r.value, certified: r.certified, nodes_explored: r.nodes_explored })
        }
    };
    let oracle_ms = t1.elapsed().as_secs_f64() * 1e3;
    let opt = oracle.as_ref().filter(|o| o.certified).map(|o| o.value);
    let approx = verify_approx_bound(&trace, &h, opt);
    let repaired = leaves.iter().any(|l| l.fallback.is_some());

    Ok(RunReport {
        schema: SCHEMA,
        input: InputFingerprint { vertices: g.vertex_count(), edges: g.edge_count(), sha256: fingerprint(g) },
        config: ConfigEcho {
            alpha: cfg.reduction.alpha.to_string(),
            epsilon: cfg.reduction.epsilon.to_string(),
            enumeration_budget: cfg.reduction.enumeration_budget,
            oracle_budget: cfg.reduction.oracle_budget,
            typed_budget: cfg.reduction.typed_budget,
            oracle: cfg.oracle,
            strict: cfg.strict,
        },
        structured_leaves: leaves.len(),
        leaves,
        final_size: h.len(),
        verified,
        solution: h,
        oracle,
        approx,
        certified: trace.certified && !repaired,
        timings: cfg.timings.then_some(PhaseTimes { reduce_ms, leaves_ms, oracle_ms }),
        trace: cfg.include_trace.then_some(trace),
    })
}

/// Runs the structured phases on one leaf. Outside strict mode a failing
/// phase is recorded and the leaf is repaired from the last good cover.
fn solve_leaf(
    g: &MultiGraph,
    cfg: &PipelineConfig,
    idx: usize,
    mut snaps: Option<&mut Vec<Snapshot>>,
) -> (EdgeSubset, Result<LeafReport, PhaseError>) {
    let mut rep = LeafReport { vertices: g.vertex_count(), edges: g.edge_count(), ..LeafReport::default() };
    let mut last_good = EdgeSubset::new();
    let mut snap = |label: &str, edges: &EdgeSubset| {
        if let Some(s) = snaps.as_deref_mut() {
            s.push(Snapshot { label: format!("leaf{idx}-{label}"), graph: g.clone(), edges: edges.clone() });
        }
    };
    let outcome = phases(g, cfg, &mut rep, &mut last_good, &mut snap);
    match outcome {
        Ok(h) => {
            rep.final_size = h.len();
            (h, Ok(rep))
        }
        Err(e) if cfg.strict => (EdgeSubset::new(), Err(e)),
        Err(e) => {
            let h = reverse_delete(g, &last_good);
            snap("repaired", &h);
            rep.final_size = h.len();
            rep.fallback = Some(Fallback { phase: e.phase, kind: e.error.kind().into(), message: e.error.to_string() });
            (h, Ok(rep))
        }
    }
}

fn phases(
    g: &MultiGraph,
    cfg: &PipelineConfig,
    rep: &mut LeafReport,
    last_good: &mut EdgeSubset,
    snap: &mut dyn FnMut(&str, &EdgeSubset),
) -> Result<EdgeSubset, PhaseError> {
    let tag = |phase: Phase| move |error: Error| PhaseError { phase, error };
    let cover: TwoEdgeCover = min_triangle_free_cover(g, cfg.cover).map_err(tag(Phase::Cover))?;
    rep.cover_size = Some(cover.len());
    rep.cover_certified = Some(cover.certified_minimum);
    *last_good = cover.edges.clone();
    snap("cover", &cover.edges);

    let (canon, _) = canonicalize(g, &cover).map_err(tag(Phase::Canonicalize))?;
    rep.canonical_size = Some(canon.len());
    *last_good = canon.edges.clone();
    snap("canonical", &canon.edges);

    let ledger = init_credits(&canon).map_err(tag(Phase::Credits))?;
    let check = lemma_bound_check(&canon, &ledger);
    rep.canonical_cost = Some(check.cost);
    rep.cost_bound_holds = Some(check.cost <= check.bound);
    rep.lemma_bound_holds = Some(check.holds);

    let bridged = cover_bridges(g, &canon, &ledger, cfg.bridge).map_err(tag(Phase::BridgeCover))?;
    rep.bridge_iterations = bridged.iterations.clone();
    rep.post_bridge_cost = Some(cost(&bridged.cover, &bridged.ledger));
    *last_good = bridged.cover.edges.clone();
    snap("bridgeless", &bridged.cover.edges);

    let mut m = GlueMachine::new(g, &bridged.cover, &bridged.ledger, cfg.glue).map_err(tag(Phase::Glue))?;
    let res = loop {
        match m.step() {
            Ok(Some(_)) => *last_good = m.cover().edges.clone(),
            Ok(None) => break Ok(()),
            Err(e) => break Err(e),
        }
    };
    rep.glue_steps = m.steps().to_vec();
    res.map_err(tag(Phase::Glue))?;
    let h = m.cover().edges.clone();
    snap("glued", &h);
    if !verify_2ecss(g, &h) {
        return Err(PhaseError {
            phase: Phase::Verify,
            error: Error::Infeasible("glued cover is not a 2-ECSS".into()),
        });
    }
    Ok(h)
}

/// Minimal 2-ECSS obtained by deleting edges while the rest stays 2EC;
/// edges outside `prefer` are tried first, highest id first.
pub fn reverse_delete(g: &MultiGraph, prefer: &EdgeSubset) -> EdgeSubset {
    let host = Host::new(g);
    let mut mask = host.full_mask();
    let mut order: Vec<usize> = (0..host.m()).collect();
    order.sort_by_key(|&i| (prefer.contains(host.ids[i]), std::cmp::Reverse(host.ids[i])));
    for i in order {
        mask[i] = false;
        if !is_2ec_spanning_mask(&host, &mask) {
            mask[i] = true;
        }
    }
    host.subset(&mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c8_is_returned_whole() {
        let e: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let g = MultiGraph::from_edges(8, &e).unwrap();
        let r = run_pipeline(&g, &PipelineConfig::default()).unwrap();
        assert_eq!(r.final_size, 8);
        assert_eq!(r.approx.ratio, Some(1.0));
    }

    #[test]
    fn reverse_delete_keeps_a_cycle() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let h = reverse_delete(&g, &EdgeSubset::new());
        assert_eq!(h.len(), 4);
        assert!(verify_2ecss(&g, &h));
    }
}
