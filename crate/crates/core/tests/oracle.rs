mod common;

use common::*;
use proptest::prelude::*;
use twoecss::graph::is_2ec_spanning;
use twoecss::oracle::{exact_min_2ecss, exact_min_tf_cover, verify_2ecss, DEFAULT_ORACLE_BUDGET};
use twoecss::Error;

#[test]
fn cycles_need_every_edge() {
    for n in 3..10 {
        let r = exact_min_2ecss(&cycle(n), DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(r.value, n);
        assert!(r.certified);
    }
}

#[test]
fn k4_matches_exhaustive_search() {
    let g = complete(4);
    let expected = brute_min_2ecss(&g).unwrap();
    let r = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
    assert_eq!(r.value, expected);
    assert_eq!(r.witness.len(), expected);
    assert!(verify_2ecss(&g, &r.witness));
}

#[test]
fn petersen_matches_exhaustive_search() {
    let g = petersen();
    let r = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
    assert!(r.certified);
    assert_eq!(Some(r.value), brute_min_2ecss(&g));
    assert!(verify_2ecss(&g, &r.witness));
}

#[test]
fn verify_examples() {
    let c5 = cycle(5);
    assert!(verify_2ecss(&c5, &c5.edge_ids()));
    assert!(!verify_2ecss(&c5, &ids(&[0, 1, 2, 3])));
    let k4 = complete(4);
    let triangle = ids(&[0, 1, 3]);
    assert!(!verify_2ecss(&k4, &triangle));
}

#[test]
fn tf_cover_examples() {
    assert_eq!(exact_min_tf_cover(&cycle(4), DEFAULT_ORACLE_BUDGET).unwrap().value, 4);
    let k4 = complete(4);
    assert_eq!(exact_min_tf_cover(&k4, DEFAULT_ORACLE_BUDGET).unwrap().value, brute_min_tf_cover(&k4).unwrap());
    assert_eq!(exact_min_tf_cover(&cycles(&[4, 4]), DEFAULT_ORACLE_BUDGET).unwrap().value, 8);
}

#[test]
fn bridged_input_is_infeasible() {
    let g = twoecss::graph::MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
    assert!(matches!(exact_min_2ecss(&g, 1000), Err(Error::Infeasible(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn exact_value_matches_enumeration(g in two_ec_graph(3, 8, 6)) {
        let r = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert!(r.certified);
        prop_assert_eq!(Some(r.value), brute_min_2ecss(&g));
        prop_assert_eq!(r.witness.len(), r.value);
        prop_assert!(naive_2ec(g.vertex_count(), &pairs(&g, &r.witness)));
    }

    #[test]
    fn optimum_is_at_least_the_vertex_count(g in two_ec_graph(3, 11, 12)) {
        let r = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert!(r.value >= g.vertex_count());
    }

    #[test]
    fn tf_cover_is_a_relaxation(g in two_ec_graph(4, 10, 10)) {
        let cover = exact_min_tf_cover(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        let opt = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert!(cover.certified && opt.certified);
        prop_assert!(cover.value <= opt.value);
        prop_assert!(naive_tf_cover(g.vertex_count(), &pairs(&g, &cover.witness)));
    }

    #[test]
    fn tf_cover_matches_enumeration(g in two_ec_graph(4, 8, 5)) {
        let r = exact_min_tf_cover(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert_eq!(Some(r.value), brute_min_tf_cover(&g));
    }

    #[test]
    fn verifier_agrees_with_graph_core(g in two_ec_graph(3, 9, 8), keep in prop::collection::vec(any::<bool>(), 20)) {
        let h = g.edges().iter().enumerate().filter(|(i, _)| keep[*i % 20]).map(|(_, e)| e.id).collect();
        prop_assert_eq!(verify_2ecss(&g, &h), is_2ec_spanning(&g, &h));
    }
}
