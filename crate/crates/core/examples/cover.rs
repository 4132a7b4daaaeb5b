//! Minimum triangle-free 2-edge cover, its canonical form and credits.

use twoecss::cover::{canonicalize, min_triangle_free_cover, CoverBudget};
use twoecss::credit::{cost, init_credits, lemma_bound_check};
use twoecss::generate::{generate, Family};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = generate(&Family::CycleRing { k: 4, cyclen: 5 }, 3)?;
    let c = min_triangle_free_cover(&g, CoverBudget::default())?;
    println!("cover: {} edges in {} components, certified {}", c.len(), c.component_count(), c.certified_minimum);
    println!("classes: {:?}", c.classes);

    let (h, stats) = canonicalize(&g, &c)?;
    println!("canonical after {} moves: {} edges", stats.iterations, h.len());

    let ledger = init_credits(&h)?;
    let bound = lemma_bound_check(&h, &ledger);
    println!("cost {} (bound holds: {})", cost(&h, &ledger), bound.holds);
    Ok(())
}
