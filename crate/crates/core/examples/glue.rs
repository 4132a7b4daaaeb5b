//! Step the gluing machine on a ring of cycles until one component is left.

use twoecss::bridge::{cover_bridges, BridgeConfig};
use twoecss::cover::{canonicalize, min_triangle_free_cover, CoverBudget};
use twoecss::credit::init_credits;
use twoecss::generate::{generate, Family};
use twoecss::glue::{GlueConfig, GlueMachine};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate(&Family::CycleRing { k: 5, cyclen: 4 }, 1)?;
    let c = min_triangle_free_cover(&g, CoverBudget::default())?;
    let (h, _) = canonicalize(&g, &c)?;
    let ledger = init_credits(&h)?;
    let b = cover_bridges(&g, &h, &ledger, BridgeConfig::default())?;

    let mut m = GlueMachine::new(&g, &b.cover, &b.ledger, GlueConfig::default())?;
    println!("start: {} components", m.cover().component_count());
    while let Some(step) = m.step()? {
        println!(
            "{:?}/{:?}: components {} -> {}, delta {}",
            step.kind, step.case, step.components_before, step.components_after, step.delta
        );
    }
    println!("done: {} edges", m.cover().len());
    Ok(())
}
