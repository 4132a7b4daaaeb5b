use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::types::SolutionType;
use crate::graph::{EdgeId, EdgeSubset, Justification, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeletionReason {
    LoopOrParallel,
    Irrelevant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum C2Subcase {
    /// Only solutions with a `C(u)`-`C(v)` path are optimal.
    PathUv,
    /// Optimal solutions share `v` as a path end.
    SharedEnd,
    /// Every labelling is optimal.
    Any,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeCutBranch {
    BothLarge,
    /// The minimum type-A subgraph was cheap enough to contract.
    ContractA,
    B1,
    B2,
    C1,
    C2(C2Subcase),
    C3,
    /// The typed branch failed with the given error kind; both sides were
    /// solved recursively instead.
    Fallback(String),
}

/// A recursive call and the dummy edges stripped from its answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub dummies: Vec<EdgeId>,
    pub trace: TraceNode,
}

impl Part {
    pub fn plain(trace: TraceNode) -> Self {
        Part { dummies: Vec::new(), trace }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceStep {
    BruteForce {
        solution: EdgeSubset,
        certified: bool,
    },
    OneCut {
        cut: Vertex,
        parts: Vec<Part>,
    },
    Deleted {
        reason: DeletionReason,
        edges: Vec<EdgeId>,
        child: Box<TraceNode>,
    },
    Contracted {
        vertices: Vec<Vertex>,
        cycle: EdgeSubset,
        justification: Justification,
        child: Box<TraceNode>,
    },
    TwoCut {
        cut: [Vertex; 2],
        parts: Vec<Part>,
        patch: EdgeSubset,
    },
    ThreeCut {
        cut: [Vertex; 3],
        small_side: usize,
        large_side: usize,
        branch: ThreeCutBranch,
        t_min: Option<SolutionType>,
        fixed: EdgeSubset,
        parts: Vec<Part>,
        patch: EdgeSubset,
        accounting: Option<i64>,
    },
    Structured {
        solution: EdgeSubset,
    },
}

/// One call of the reduction on a graph with the given size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub vertices: usize,
    pub edges: usize,
    pub returned: usize,
    pub step: TraceStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub alpha: Rational64,
    pub epsilon: Rational64,
    pub enumeration_budget: usize,
    /// Whether every step kept the approximation guarantee.
    pub certified: bool,
    pub root: TraceNode,
}

impl ReductionTrace {
    pub fn replay(&self) -> EdgeSubset {
        replay(&self.root)
    }

    /// Number of structured leaves.
    pub fn structured_leaves(&self) -> usize {
        let mut n = 0;
        self.root.visit(&mut |t| n += usize::from(matches!(t.step, TraceStep::Structured { .. })));
        n
    }
}

impl TraceNode {
    pub fn children(&self) -> Vec<&TraceNode> {
        match &self.step {
            TraceStep::OneCut { parts, .. } | TraceStep::TwoCut { parts, .. } | TraceStep::ThreeCut { parts, .. } => {
                parts.iter().map(|p| &p.trace).collect()
            }
            TraceStep::Deleted { child, .. } | TraceStep::Contracted { child, .. } => vec![child],
            TraceStep::BruteForce { .. } | TraceStep::Structured { .. } => Vec::new(),
        }
    }

    pub fn visit(&self, f: &mut dyn FnMut(&TraceNode)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }
}

fn union_parts(parts: &[Part]) -> EdgeSubset {
    let mut out = EdgeSubset::new();
    for p in parts {
        let sub = replay(&p.trace);
        out.extend(sub.iter().filter(|e| !p.dummies.contains(e)));
    }
    out
}

/// Rebuilds the returned edge set from the recorded leaf solutions.
pub fn replay(node: &TraceNode) -> EdgeSubset {
    match &node.step {
        TraceStep::BruteForce { solution, .. } | TraceStep::Structured { solution } => solution.clone(),
        TraceStep::OneCut { parts, .. } => union_parts(parts),
        TraceStep::Deleted { child, .. } => replay(child),
        TraceStep::Contracted { cycle, child, .. } => cycle.union(&replay(child)),
        TraceStep::TwoCut { parts, patch, .. } => union_parts(parts).union(patch),
        TraceStep::ThreeCut { fixed, parts, patch, .. } => fixed.union(&union_parts(parts)).union(patch),
    }
}
