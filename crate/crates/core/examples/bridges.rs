//! Cover the bridge of a dumbbell with an ear from the host graph.

use twoecss::bridge::{cover_bridges, BridgeConfig};
use twoecss::cover::TwoEdgeCover;
use twoecss::credit::init_credits;
use twoecss::graph::{EdgeSubset, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two hexagons joined by 0-6; 3-9 is only in the host
    let mut e: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    e.push((0, 6));
    e.extend((0..6).map(|i| (6 + i, 6 + (i + 1) % 6)));
    let in_cover = e.len();
    e.push((3, 9));
    let g = MultiGraph::from_edges(12, &e)?;
    let edges: EdgeSubset = g.edge_ids().into_iter().take(in_cover).collect();
    let h = TwoEdgeCover::new(&g, edges, false);
    let ledger = init_credits(&h)?;

    let out = cover_bridges(&g, &h, &ledger, BridgeConfig::default())?;
    for it in &out.iterations {
        println!("bridges {} -> {}, cost {} -> {}", it.bridges_before, it.bridges_after, it.cost_before, it.cost_after);
    }
    println!("bridgeless: {}, {} edges", out.cover.is_bridgeless(), out.cover.len());
    Ok(())
}
