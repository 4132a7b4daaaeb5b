mod common;

use common::*;
use proptest::prelude::*;
use twoecss::graph::connectivity::{decompose, is_2ec_spanning};
use twoecss::graph::cycles::is_simple_cycle;
use twoecss::graph::{
    bridges, find_cycle_through_edges, find_vertex_cut, is_two_edge_connected, max_matching_across,
    residual_components, CutKind, EdgeId, MultiGraph,
};

fn endpoints(g: &MultiGraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.u, e.v)).collect()
}

#[test]
fn contracting_an_edge_of_c4() {
    let g = cycle(4);
    let c = g.contract(&[0, 1]).unwrap();
    assert_eq!(c.graph.vertex_count(), 3);
    assert_eq!(c.graph.edge_count(), 4);
    assert_eq!(c.graph.edges().iter().filter(|e| e.is_loop()).count(), 1);
}

#[test]
fn contracting_everything_leaves_loops() {
    let g = complete(5);
    let c = g.contract(&[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(c.graph.vertex_count(), 1);
    assert_eq!(c.graph.edge_count(), 10);
    assert!(c.graph.edges().iter().all(|e| e.is_loop()));
}

#[test]
fn contracting_a_singleton_keeps_ids() {
    let g = petersen();
    let c = g.contract(&[3]).unwrap();
    assert_eq!(c.graph.vertex_count(), 10);
    assert_eq!(c.graph.edge_ids(), g.edge_ids());
    assert!(c.graph.is_simple());
}

#[test]
fn c5_and_tree_decompositions() {
    let g = cycle(5);
    let d = decompose(&g, &g.edge_ids());
    assert_eq!((d.bridges.len(), d.blocks.len(), d.components.len()), (0, 1, 1));
    let t = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
    let d = decompose(&t, &t.edge_ids());
    assert_eq!((d.bridges.len(), d.blocks.len()), (4, 0));
}

#[test]
fn glued_k10s_have_a_large_three_cut() {
    let mut e = Vec::new();
    for side in [0usize, 7] {
        let vs: Vec<usize> = (0..3).chain(3 + side..10 + side).collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !(vs[i] < 3 && vs[j] < 3 && side == 7) {
                    e.push((vs[i], vs[j]));
                }
            }
        }
    }
    let g = MultiGraph::from_edges(17, &e).unwrap();
    let c = find_vertex_cut(&g, 3).unwrap();
    assert_eq!(c.cut, vec![0, 1, 2]);
    assert_eq!(c.kind, CutKind::ThreeLarge);
    assert!(c.side_a.len() >= 7 && c.side_b.len() >= 7);
}

/// Independent residual components: BFS avoiding the cut.
fn naive_residual(g: &MultiGraph, cut: &[usize]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let kept: Vec<(usize, usize)> =
        endpoints(g).into_iter().filter(|&(u, v)| !cut.contains(&u) && !cut.contains(&v)).collect();
    let l = labels(n, &kept);
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in (0..n).filter(|v| !cut.contains(v)) {
        groups.entry(l[v]).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Brute-force minimum vertex cover of the crossing edges.
fn min_cover_across(g: &MultiGraph, v1: &[usize], v2: &[usize]) -> usize {
    let cross: Vec<(usize, usize)> = endpoints(g)
        .into_iter()
        .filter(|&(u, v)| (v1.contains(&u) && v2.contains(&v)) || (v1.contains(&v) && v2.contains(&u)))
        .collect();
    let verts: Vec<usize> = {
        let mut s: Vec<usize> = cross.iter().flat_map(|&(u, v)| [u, v]).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    for k in 0..=verts.len() {
        if any_subset(verts.len(), k, &mut |idx| {
            let pick: Vec<usize> = idx.iter().map(|&i| verts[i]).collect();
            cross.iter().all(|&(u, v)| pick.contains(&u) || pick.contains(&v))
        }) {
            return k;
        }
    }
    unreachable!()
}

/// Does some set of edges form a simple cycle through all of `f`?
fn brute_cycle_exists(g: &MultiGraph, f: &[EdgeId]) -> bool {
    let all: Vec<_> = g.edges().to_vec();
    let n = g.vertex_count();
    (2..=n.min(all.len())).any(|k| {
        any_subset(all.len(), k, &mut |idx| {
            let chosen: Vec<_> = idx.iter().map(|&i| &all[i]).collect();
            if !f.iter().all(|id| chosen.iter().any(|e| e.id == *id)) || chosen.iter().any(|e| e.is_loop()) {
                return false;
            }
            let mut deg = vec![0; n];
            for e in &chosen {
                deg[e.u] += 1;
                deg[e.v] += 1;
            }
            if deg.iter().any(|&d| d != 0 && d != 2) {
                return false;
            }
            let pairs: Vec<_> = chosen.iter().map(|e| (e.u, e.v)).collect();
            let l = labels(n, &pairs);
            let root = l[chosen[0].u];
            (0..n).filter(|&v| deg[v] > 0).all(|v| l[v] == root)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn contraction_keeps_every_edge(g in any_multigraph(8, 14), pick in prop::collection::vec(any::<bool>(), 8)) {
        let n = g.vertex_count();
        let mut s: Vec<usize> = (0..n).filter(|&v| pick[v]).collect();
        if s.is_empty() {
            s.push(0);
        }
        let c = g.contract(&s).unwrap();
        prop_assert_eq!(c.graph.edge_count(), g.edge_count());
        prop_assert_eq!(c.graph.edge_ids(), g.edge_ids());
        prop_assert_eq!(c.graph.vertex_count(), n - s.len() + 1);
        for e in g.edges() {
            let ne = c.graph.edge(e.id).unwrap();
            let (a, b) = (c.vertex_map[e.u], c.vertex_map[e.v]);
            prop_assert!((ne.u, ne.v) == (a, b) || (ne.u, ne.v) == (b, a));
        }
    }

    #[test]
    fn two_edge_connectivity_agrees_with_decomposition(g in any_multigraph(8, 14)) {
        let d = decompose(&g, &g.edge_ids());
        let via_blocks = d.bridges.is_empty() && d.components.len() == 1;
        prop_assert_eq!(is_two_edge_connected(&g), via_blocks);
        prop_assert_eq!(via_blocks, naive_2ec(g.vertex_count(), &endpoints(&g)));
    }

    #[test]
    fn bridges_match_the_definition(g in any_multigraph(8, 14)) {
        let e = endpoints(&g);
        let naive: Vec<EdgeId> = naive_bridges(g.vertex_count(), &e).into_iter().map(|i| g.edges()[i].id).collect();
        let mut found = bridges(&g, &g.edge_ids());
        found.sort();
        prop_assert_eq!(found, naive);
    }

    #[test]
    fn matching_size_is_the_cover_size(g in any_multigraph(9, 12), side in prop::collection::vec(any::<bool>(), 9)) {
        let n = g.vertex_count();
        let v1: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
        let v2: Vec<usize> = (0..n).filter(|&v| !side[v]).collect();
        let m = max_matching_across(&g, &v1, &v2);
        let mut used = std::collections::BTreeSet::new();
        for id in &m {
            let e = g.edge(*id).unwrap();
            prop_assert!(v1.contains(&e.u) != v1.contains(&e.v));
            prop_assert!(used.insert(e.u) && used.insert(e.v));
        }
        prop_assert_eq!(m.len(), min_cover_across(&g, &v1, &v2));
    }

    #[test]
    fn cycles_through_edges(g in two_ec_graph(4, 8, 5), a in 0usize..20, b in 0usize..20, two in any::<bool>()) {
        let m = g.edge_count();
        let mut f = vec![g.edges()[a % m].id];
        if two && a % m != b % m {
            f.push(g.edges()[b % m].id);
        }
        match find_cycle_through_edges(&g, &f, 1_000_000).unwrap() {
            Some(c) => {
                prop_assert!(is_simple_cycle(&g, &c));
                prop_assert!(f.iter().all(|e| c.contains(e)));
            }
            None => prop_assert!(!brute_cycle_exists(&g, &f)),
        }
    }

    #[test]
    fn vertex_cut_classification(g in two_ec_graph(5, 12, 10), k in 1usize..=3) {
        if let Some(c) = find_vertex_cut(&g, k) {
            let naive = naive_residual(&g, &c.cut);
            prop_assert!(naive.len() >= 2);
            prop_assert_eq!(&c.residual, &naive);
            prop_assert_eq!(residual_components(&g, &c.cut), naive.clone());
            let kind = match k {
                1 => CutKind::OneCut,
                2 if naive.len() == 2 && naive.iter().any(|s| s.len() == 1) => CutKind::TwoIsolating,
                2 => CutKind::TwoNonIsolating,
                _ if naive.len() == 2 && naive.iter().any(|s| s.len() <= 6) => CutKind::ThreeSmall,
                _ => CutKind::ThreeLarge,
            };
            prop_assert_eq!(c.kind, kind);
        }
    }

    #[test]
    fn spanning_check_matches_naive(g in two_ec_graph(3, 8, 6), keep in prop::collection::vec(any::<bool>(), 20)) {
        let h = g.edges().iter().enumerate().filter(|(i, _)| keep[*i % 20]).map(|(_, e)| e.id).collect();
        prop_assert_eq!(is_2ec_spanning(&g, &h), naive_2ec(g.vertex_count(), &pairs(&g, &h)));
    }
}
