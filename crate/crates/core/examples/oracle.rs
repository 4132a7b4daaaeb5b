//! Exact solvers on the Petersen graph.

use twoecss::graph::MultiGraph;
use twoecss::oracle::{exact_min_2ecss, exact_min_tf_cover, verify_2ecss, DEFAULT_ORACLE_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    e.extend((0..5).map(|i| (i, i + 5)));
    e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    let g = MultiGraph::from_edges(10, &e)?;

    let opt = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET)?;
    println!("min 2-ECSS: {} edges, certified {}, {} nodes", opt.value, opt.certified, opt.nodes_explored);
    println!("witness verifies: {}", verify_2ecss(&g, &opt.witness));

    let cover = exact_min_tf_cover(&g, DEFAULT_ORACLE_BUDGET)?;
    println!("min triangle-free 2-edge cover: {} edges", cover.value);
    Ok(())
}
