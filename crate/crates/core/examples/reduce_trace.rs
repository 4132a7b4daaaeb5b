//! Print the reduction tree for two cliques glued on three vertices.

use twoecss::generate::{generate, Family};
use twoecss::graph::EdgeSubset;
use twoecss::pipeline::reverse_delete;
use twoecss::reduce::{reduce, ReductionConfig, TraceNode, TraceStep};

fn show(node: &TraceNode, depth: usize) {
    let what = match &node.step {
        TraceStep::BruteForce { certified, .. } => format!("brute force (certified {certified})"),
        TraceStep::OneCut { cut, .. } => format!("cut vertex {cut}"),
        TraceStep::Deleted { .. } => "deleted edges".into(),
        TraceStep::Contracted { .. } => "contracted".into(),
        TraceStep::TwoCut { patch, .. } => format!("2-cut, patch {}", patch.len()),
        TraceStep::ThreeCut { branch, patch, .. } => format!("3-cut {branch:?}, patch {}", patch.len()),
        TraceStep::Structured { .. } => "structured leaf".into(),
    };
    println!(
        "{:indent$}n={} m={} -> {} edges: {what}",
        "",
        node.vertices,
        node.edges,
        node.returned,
        indent = 2 * depth
    );
    for c in node.children() {
        show(c, depth + 1);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate(&Family::GluedCliques { a: 11, b: 11, shared: 3 }, 5)?;
    let cfg = ReductionConfig::default();
    let (h, trace) = reduce(&g, &cfg, &mut |leaf| Ok(reverse_delete(leaf, &EdgeSubset::new())))?;
    show(&trace.root, 0);
    println!("{} edges, replay matches: {}", h.len(), trace.replay() == h);
    Ok(())
}
