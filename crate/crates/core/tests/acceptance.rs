//! One line per acceptance criterion; exits non-zero when any fails.

mod common;

use std::time::Instant;

use common::*;
use twoecss::bridge::{cover_bridges, BridgeConfig, BridgeIteration};
use twoecss::cover::canonicalize;
use twoecss::cover::{min_triangle_free_cover, CoverBudget};
use twoecss::credit::Quarters;
use twoecss::credit::{cost, init_credits};
use twoecss::generate::{generate, Family};
use twoecss::glue::GlueKind;
use twoecss::glue::{GlueConfig, GlueMachine, GlueStep};
use twoecss::graph::{cut_vertices, vertex_cuts, CutKind};
use twoecss::graph::{max_matching_across, MultiGraph};
use twoecss::oracle::{exact_min_2ecss, exact_min_tf_cover, DEFAULT_ORACLE_BUDGET};
use twoecss::pipeline::{run_pipeline, LeafReport, OracleMode, Phase, PipelineConfig, RunReport};
use twoecss::reduce::{find_large_split, ReductionConfig};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// The 500-instance corpus shared by several criteria.
fn corpus() -> Vec<(String, MultiGraph)> {
    let mut out = Vec::new();
    for seed in 0..500u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = match seed % 4 {
            0 => Family::RandomTwoEc { n: r.gen_range(8..=40), p: r.gen_range(0.12..0.4) },
            1 => {
                let (a, b) = (r.gen_range(6..=12), r.gen_range(6..=12));
                Family::GluedCliques { a, b, shared: r.gen_range(1..=3) }
            }
            2 => Family::CycleRing { k: r.gen_range(2..=8), cyclen: r.gen_range(3..=7) },
            _ => Family::StructuredRandom { n: r.gen_range(8..=30), cycles: r.gen_range(2..=3) },
        };
        let g = generate(&f, seed).unwrap();
        out.push((format!("{} seed {seed}", f.name()), g));
    }
    out
}

fn leaves(runs: &[RunReport]) -> impl Iterator<Item = &LeafReport> {
    runs.iter().flat_map(|r| &r.leaves)
}

fn feasible_in_time(corpus: &[(String, MultiGraph)], runs: &mut Vec<RunReport>) -> Outcome {
    let cfg = PipelineConfig { oracle: OracleMode::Off, ..PipelineConfig::default() };
    let t = Instant::now();
    let mut bad = Vec::new();
    for (name, g) in corpus {
        match run_pipeline(g, &cfg) {
            Ok(r) if r.verified => runs.push(r),
            Ok(_) => bad.push(format!("{name}: unverified")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 300.0;
    outcome(ok, format!("{} of {} feasible in {secs:.1}s {:?}", runs.len(), corpus.len(), bad.first()))
}

fn exact_on_small_inputs() -> Outcome {
    let cfg = PipelineConfig { oracle: OracleMode::Off, ..PipelineConfig::default() };
    let mut checked = 0;
    let mut wrong = Vec::new();
    for seed in 0..220u64 {
        let mut r = ChaCha8Rng::seed_from_u64(1000 + seed);
        let g = generate(&Family::RandomTwoEc { n: r.gen_range(4..=12), p: r.gen_range(0.2..0.6) }, seed).unwrap();
        let got = run_pipeline(&g, &cfg).unwrap().final_size;
        let opt = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        checked += 1;
        if !opt.certified || got != opt.value {
            wrong.push((seed, got, opt.value));
        }
    }
    outcome(checked >= 200 && wrong.is_empty(), format!("{checked} instances, mismatches {wrong:?}"))
}

fn exact_covers() -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    for seed in 0..220u64 {
        let mut r = ChaCha8Rng::seed_from_u64(2000 + seed);
        let g = generate(&Family::RandomTwoEc { n: r.gen_range(4..=10), p: r.gen_range(0.2..0.6) }, seed).unwrap();
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        let exact = exact_min_tf_cover(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        checked += 1;
        if !c.certified_minimum || c.len() != exact.value || !naive_tf_cover(g.vertex_count(), &pairs(&g, &c.edges)) {
            wrong.push(seed);
        }
    }
    outcome(checked >= 200 && wrong.is_empty(), format!("{checked} covers, mismatches {wrong:?}"))
}

fn canonical_cost(runs: &[RunReport]) -> Outcome {
    let mut n = 0;
    let mut bad = 0;
    for l in leaves(runs) {
        if let (Some(c), Some(h)) = (l.canonical_cost, l.canonical_size) {
            n += 1;
            if c > Quarters(5 * h as i64) {
                bad += 1;
            }
        }
    }
    outcome(n > 0 && bad == 0, format!("{n} canonical covers, {bad} over 5/4 |H|"))
}

/// A dense core with a subdivided spanning tree: the degree-2 vertices force
/// tree paths into every cover, which leaves bridges behind.
fn subdivided_tree(seed: u64) -> MultiGraph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let k = r.gen_range(8..=16);
    let core = generate(&Family::StructuredRandom { n: k, cycles: 2 }, seed).unwrap();
    let mut e: Vec<(usize, usize)> = core.edges().iter().map(|x| (x.u, x.v)).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(&mut r);
    for i in 1..k {
        let mid = k + i - 1;
        e.push((order[i], mid));
        e.push((mid, order[r.gen_range(0..i)]));
    }
    MultiGraph::from_edges(2 * k - 1, &e).unwrap()
}

/// No cut vertex, no non-isolating 2-cut and no large 3-cut split.
fn structured(g: &MultiGraph) -> bool {
    cut_vertices(g).is_empty()
        && !vertex_cuts(g, 2).iter().any(|c| c.kind == CutKind::TwoNonIsolating)
        && find_large_split(g).is_none()
}

struct Phases {
    iterations: Vec<BridgeIteration>,
    stuck: bool,
    start: Quarters,
    glue: Option<(Vec<GlueStep>, usize)>,
}

/// Cover, canonicalize, credit, cover bridges and glue. `None` when an early
/// phase rejects the input as outside its preconditions.
fn leaf_phases(g: &MultiGraph) -> Option<Phases> {
    let c = min_triangle_free_cover(g, CoverBudget::default()).ok()?;
    let (h, _) = canonicalize(g, &c).ok()?;
    let ledger = init_credits(&h).ok()?;
    let out = match cover_bridges(g, &h, &ledger, BridgeConfig::default()) {
        Ok(out) => out,
        Err(twoecss::Error::Stuck { .. }) => {
            return Some(Phases { iterations: Vec::new(), stuck: true, start: Quarters::ZERO, glue: None })
        }
        Err(_) => return None,
    };
    let start = cost(&out.cover, &out.ledger);
    let glue = GlueMachine::new(g, &out.cover, &out.ledger, GlueConfig::default()).ok().and_then(|mut m| {
        let mut steps = Vec::new();
        loop {
            match m.step() {
                Ok(Some(s)) => steps.push(s.clone()),
                Ok(None) => return Some((steps, m.cover().len())),
                Err(_) => return None,
            }
        }
    });
    Some(Phases { iterations: out.iterations, stuck: false, start, glue })
}

fn bridge_monotone(runs: &[RunReport]) -> Outcome {
    let (mut iters, mut bad, mut stuck, mut skipped) = (0, 0, 0, 0);
    let mut check = |its: &[BridgeIteration]| {
        for it in its {
            iters += 1;
            if it.bridges_after >= it.bridges_before || it.cost_after > it.cost_before {
                bad += 1;
            }
        }
    };
    for l in leaves(runs) {
        if l.fallback.as_ref().is_some_and(|f| f.phase == Phase::BridgeCover) {
            stuck += 1;
        }
        check(&l.bridge_iterations);
    }
    for seed in 0..600 {
        let g = subdivided_tree(seed);
        if !structured(&g) {
            continue;
        }
        match leaf_phases(&g) {
            Some(p) => {
                stuck += usize::from(p.stuck);
                check(&p.iterations);
            }
            None => skipped += 1,
        }
    }
    let detail = format!("{iters} iterations, {bad} non-monotone, {stuck} stuck, {skipped} rejected before bridging");
    outcome(iters > 0 && bad == 0 && stuck == 0, detail)
}

fn glue_ok(steps: &[GlueStep], start: Quarters, final_size: usize) -> bool {
    let positive = steps.iter().filter(|s| s.delta > Quarters::ZERO).count();
    let steps_ok = steps.iter().all(|s| {
        if s.kind == GlueKind::MakeHuge {
            s.delta <= Quarters::whole(3) && s.components_after <= s.components_before
        } else {
            s.delta <= Quarters::ZERO && s.components_after < s.components_before
        }
    });
    positive <= 1 && steps_ok && Quarters::whole(final_size as i64) <= start + Quarters::whole(1)
}

fn glue_accounting(runs: &[RunReport]) -> Outcome {
    let (mut steps, mut bad) = (0, Vec::new());
    for l in leaves(runs) {
        let Some(start) = l.post_bridge_cost else { continue };
        if l.fallback.is_some() {
            continue;
        }
        steps += l.glue_steps.len();
        if !glue_ok(&l.glue_steps, start, l.final_size) {
            bad.push(format!("leaf of {} vertices", l.vertices));
        }
    }
    let mut rejected = 0;
    for seed in 0..200u64 {
        let mut r = ChaCha8Rng::seed_from_u64(4000 + seed);
        let f = Family::CycleRing { k: r.gen_range(2..=8), cyclen: r.gen_range(4..=7) };
        let g = generate(&f, seed).unwrap();
        match leaf_phases(&g).and_then(|p| p.glue.map(|gl| (p.start, gl))) {
            Some((start, (s, fin))) => {
                steps += s.len();
                if !glue_ok(&s, start, fin) {
                    bad.push(format!("cycle ring seed {seed}"));
                }
            }
            None => rejected += 1,
        }
    }
    outcome(steps > 0 && bad.is_empty(), format!("{steps} glue steps, {rejected} rejected, violations {bad:?}"))
}

fn structured_matchings() -> Outcome {
    let (mut graphs, mut cuts, mut bad) = (0, 0, Vec::new());
    for seed in 0..110u64 {
        let n = 20 + (seed as usize % 11);
        let g = generate(&Family::StructuredRandom { n, cycles: 3 }, seed).unwrap();
        graphs += 1;
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let mut vs: Vec<usize> = (0..n).collect();
            vs.shuffle(&mut r);
            let k = r.gen_range(3..=n - 3);
            let (v1, v2) = vs.split_at(k);
            let m = max_matching_across(&g, v1, v2).len();
            let need = if v1.len() >= 10 && v2.len() >= 10 { 4 } else { 3 };
            cuts += 1;
            if m < need {
                bad.push((seed, v1.len(), m));
            }
        }
    }
    outcome(graphs >= 100 && bad.is_empty(), format!("{graphs} graphs, {cuts} bipartitions, short {bad:?}"))
}

fn small_n0_ratio() -> Outcome {
    let cfg = PipelineConfig {
        reduction: ReductionConfig { enumeration_budget: 6, ..ReductionConfig::default() },
        oracle: OracleMode::Force,
        ..PipelineConfig::default()
    };
    let (mut n_runs, mut worst, mut bad) = (0, 1.0f64, Vec::new());
    for seed in 0..120u64 {
        let mut r = ChaCha8Rng::seed_from_u64(3000 + seed);
        let f = if seed % 2 == 0 {
            Family::RandomTwoEc { n: r.gen_range(7..=14), p: r.gen_range(0.2..0.5) }
        } else {
            Family::StructuredRandom { n: r.gen_range(7..=14), cycles: 2 }
        };
        let g = generate(&f, seed).unwrap();
        match run_pipeline(&g, &cfg) {
            Ok(rep) => {
                n_runs += 1;
                let ratio = rep.approx.ratio.unwrap_or(f64::INFINITY);
                worst = worst.max(ratio);
                if ratio > 1.5 {
                    bad.push(seed);
                }
            }
            Err(_) => bad.push(seed),
        }
    }
    outcome(bad.is_empty(), format!("{n_runs} runs, worst ratio {worst:.3}, over 1.5 {bad:?}"))
}

fn deterministic(corpus: &[(String, MultiGraph)]) -> Outcome {
    let cfg = PipelineConfig { include_trace: true, ..PipelineConfig::default() };
    let mut diff = Vec::new();
    for (name, g) in corpus.iter().step_by(10) {
        let a = serde_json::to_string(&run_pipeline(g, &cfg).ok()).unwrap();
        let b = serde_json::to_string(&run_pipeline(g, &cfg).ok()).unwrap();
        if a != b {
            diff.push(name.clone());
        }
    }
    outcome(diff.is_empty(), format!("{} instances run twice, differing {diff:?}", corpus.len().div_ceil(10)))
}

fn main() {
    let corpus = corpus();
    let mut runs = Vec::new();
    let mut results = vec![("feasible on 500 instances within 5 minutes", feasible_in_time(&corpus, &mut runs))];
    results.push(("exact for n <= 12", exact_on_small_inputs()));
    results.push(("minimum triangle-free covers for n <= 10", exact_covers()));
    results.push(("canonical cost at most 5/4 |H|", canonical_cost(&runs)));
    results.push(("bridge covering is monotone and never stuck", bridge_monotone(&runs)));
    results.push(("gluing pays at most once, at most +3", glue_accounting(&runs)));
    results.push(("structured graphs have large crossing matchings", structured_matchings()));
    results.push(("n0 = 6 keeps the ratio at most 1.5 for n <= 14", small_n0_ratio()));
    results.push(("reports are deterministic", deterministic(&corpus)));

    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("{} {}: {name} ({})", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.ok);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
