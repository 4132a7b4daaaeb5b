//! Solve a random 2-edge-connected graph and compare against the exact optimum.

use twoecss::generate::{generate, Family};
use twoecss::pipeline::{run_pipeline, OracleMode, PipelineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate(&Family::RandomTwoEc { n: 14, p: 0.3 }, 7)?;
    let cfg = PipelineConfig { oracle: OracleMode::Force, ..PipelineConfig::default() };
    let r = run_pipeline(&g, &cfg)?;
    println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    println!("kept {} edges, verified {}", r.final_size, r.verified);
    if let Some(o) = &r.oracle {
        println!("optimum {} (certified {}), ratio {:.3}", o.value, o.certified, r.approx.ratio.unwrap_or(f64::NAN));
    }
    Ok(())
}
