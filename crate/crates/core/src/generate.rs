//! Seeded instance families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::cuts::{vertex_cuts, CutKind};
use crate::graph::{cut_vertices, is_two_edge_connected, MultiGraph};

pub const MAX_REJECTIONS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `G(n, p)` conditioned on being 2-edge-connected.
    RandomTwoEc { n: usize, p: f64 },
    /// `K_a` and `K_b` sharing `shared` vertices, labels shuffled.
    GluedCliques { a: usize, b: usize, shared: usize },
    /// `k` disjoint cycles of length `cyclen` in a ring, two random links
    /// between neighbouring cycles.
    CycleRing { k: usize, cyclen: usize },
    /// Union of `cycles` random Hamiltonian cycles, kept only when it has no
    /// cut of at most two vertices and no large 3-vertex cut.
    StructuredRandom { n: usize, cycles: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RandomTwoEc { .. } => "random-2ec",
            Family::GluedCliques { .. } => "glued-cliques",
            Family::CycleRing { .. } => "cycle-ring",
            Family::StructuredRandom { .. } => "structured-random",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match *self {
            Family::RandomTwoEc { n, p } if n < 3 || !(0.0..=1.0).contains(&p) => {
                bad(format!("random-2ec needs n >= 3 and p in [0, 1], got n={n} p={p}"))
            }
            Family::GluedCliques { a, b, shared } if shared == 0 || shared >= a.min(b) || a.min(b) < 3 => {
                bad(format!("glued-cliques needs 0 < shared < min(a, b) and cliques of 3+, got {a} {b} {shared}"))
            }
            Family::CycleRing { k, cyclen } if k < 2 || cyclen < 3 => {
                bad(format!("cycle-ring needs k >= 2 and cyclen >= 3, got {k} {cyclen}"))
            }
            Family::StructuredRandom { n, cycles } if n < 5 || cycles < 2 => {
                bad(format!("structured-random needs n >= 5 and 2+ cycles, got {n} {cycles}"))
            }
            _ => Ok(()),
        }
    }
}

pub fn generate(family: &Family, seed: u64) -> Result<MultiGraph> {
    family.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        Family::RandomTwoEc { n, p } => random_2ec(n, p, &mut rng),
        Family::GluedCliques { a, b, shared } => Ok(glued_cliques(a, b, shared, &mut rng)),
        Family::CycleRing { k, cyclen } => Ok(cycle_ring(k, cyclen, &mut rng)),
        Family::StructuredRandom { n, cycles } => structured_random(n, cycles, &mut rng),
    }
}

fn random_2ec(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<MultiGraph> {
    for _ in 0..MAX_REJECTIONS {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        let g = MultiGraph::from_edges(n, &pairs)?;
        if is_two_edge_connected(&g) {
            return Ok(g);
        }
    }
    Err(Error::RejectionLimit(MAX_REJECTIONS))
}

fn glued_cliques(a: usize, b: usize, shared: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    let n = a + b - shared;
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut pairs = Vec::new();
    for u in 0..a {
        for v in u + 1..a {
            pairs.push((label[u], label[v]));
        }
    }
    // the second clique is a - shared .. n
    let start = a - shared;
    for u in start..n {
        for v in u + 1..n {
            if u < a && v < a {
                continue;
            }
            pairs.push((label[u], label[v]));
        }
    }
    MultiGraph::from_edges(n, &pairs).expect("labels in range")
}

fn cycle_ring(k: usize, len: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    let mut pairs = Vec::new();
    for c in 0..k {
        for i in 0..len {
            pairs.push((c * len + i, c * len + (i + 1) % len));
        }
    }
    for c in 0..k {
        let d = (c + 1) % k;
        let mut used = Vec::new();
        while used.len() < 2 {
            let link = (c * len + rng.gen_range(0..len), d * len + rng.gen_range(0..len));
            if !used.contains(&link) {
                used.push(link);
            }
        }
        pairs.extend(used);
    }
    MultiGraph::from_edges(k * len, &pairs).expect("labels in range")
}

fn structured_random(n: usize, cycles: usize, rng: &mut ChaCha8Rng) -> Result<MultiGraph> {
    for _ in 0..MAX_REJECTIONS {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for _ in 0..cycles {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            for i in 0..n {
                let (u, v) = (order[i], order[(i + 1) % n]);
                let key = (u.min(v), u.max(v));
                if !pairs.contains(&key) {
                    pairs.push(key);
                }
            }
        }
        let g = MultiGraph::from_edges(n, &pairs)?;
        let fragile = !cut_vertices(&g).is_empty()
            || !vertex_cuts(&g, 2).is_empty()
            || vertex_cuts(&g, 3).iter().any(|c| c.kind == CutKind::ThreeLarge);
        if !fragile {
            return Ok(g);
        }
    }
    Err(Error::RejectionLimit(MAX_REJECTIONS))
}
