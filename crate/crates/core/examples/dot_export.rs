//! Write every pipeline snapshot as a Graphviz file.

use twoecss::generate::{generate, Family};
use twoecss::io::to_dot;
use twoecss::pipeline::{run_pipeline_with_snapshots, PipelineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate(&Family::StructuredRandom { n: 18, cycles: 2 }, 2)?;
    let (_, snaps) = run_pipeline_with_snapshots(&g, &PipelineConfig::default())?;
    let dir = std::env::temp_dir().join("twoecss-dot");
    std::fs::create_dir_all(&dir)?;
    for (i, s) in snaps.iter().enumerate() {
        let path = dir.join(format!("{i:03}-{}.dot", s.label));
        std::fs::write(&path, to_dot(&s.graph, &s.label, Some(&s.edges)))?;
        println!("{}", path.display());
    }
    Ok(())
}
