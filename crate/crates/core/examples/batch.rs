//! Solve a batch of seeds on a few threads and summarise the ratios.

use std::sync::Mutex;

use twoecss::generate::{generate, Family};
use twoecss::pipeline::{run_pipeline, OracleMode, PipelineConfig};

fn main() {
    let cfg = PipelineConfig { oracle: OracleMode::Force, ..PipelineConfig::default() };
    let seeds: Vec<u64> = (0..24).collect();
    let ratios = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for chunk in seeds.chunks(6) {
            let (cfg, ratios) = (&cfg, &ratios);
            s.spawn(move || {
                for &seed in chunk {
                    let g = generate(&Family::StructuredRandom { n: 12, cycles: 2 }, seed).unwrap();
                    let r = run_pipeline(&g, cfg).unwrap();
                    ratios.lock().unwrap().push((seed, r.approx.ratio.unwrap_or(f64::NAN)));
                }
            });
        }
    });
    let mut ratios = ratios.into_inner().unwrap();
    ratios.sort_by_key(|&(s, _)| s);
    let worst = ratios.iter().map(|&(_, r)| r).fold(1.0, f64::max);
    let mean = ratios.iter().map(|&(_, r)| r).sum::<f64>() / ratios.len() as f64;
    println!("{} instances, mean ratio {mean:.3}, worst {worst:.3}", ratios.len());
}
