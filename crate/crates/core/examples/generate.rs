//! Generate one instance of each family and print it in the edge-list format.

use twoecss::generate::{generate, Family};
use twoecss::io::{fingerprint, write_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let families = [
        Family::RandomTwoEc { n: 8, p: 0.4 },
        Family::GluedCliques { a: 5, b: 5, shared: 2 },
        Family::CycleRing { k: 3, cyclen: 4 },
        Family::StructuredRandom { n: 9, cycles: 2 },
    ];
    for f in &families {
        let g = generate(f, 1)?;
        println!("# {} {}", f.name(), fingerprint(&g));
        print!("{}", write_graph(&g));
    }
    Ok(())
}
