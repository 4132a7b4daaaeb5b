mod common;

use common::*;
use proptest::prelude::*;
use twoecss::cover::{
    canonicalize, check_canonical, min_triangle_free_cover, ComponentClass, CoverBudget, TwoEdgeCover,
};
use twoecss::generate::{generate, Family};
use twoecss::oracle::{exact_min_2ecss, exact_min_tf_cover, DEFAULT_ORACLE_BUDGET};

#[test]
fn k4_cover_is_a_four_cycle() {
    let g = complete(4);
    let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
    assert_eq!(Some(c.len()), brute_min_tf_cover(&g));
    assert_eq!(c.classes, vec![ComponentClass::Cycle(4)]);
}

#[test]
fn ring_of_five_squares_is_covered_by_the_squares() {
    let g = generate(&Family::CycleRing { k: 5, cyclen: 4 }, 1).unwrap();
    assert_eq!(g.vertex_count(), 20);
    let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
    assert!(c.certified_minimum);
    assert_eq!(Some(c.len()), brute_min_tf_cover(&g));
    assert_eq!(c.classes, vec![ComponentClass::Cycle(4); 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn certified_cover_is_minimum(g in two_ec_graph(4, 10, 10)) {
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        prop_assert!(c.certified_minimum);
        prop_assert!(naive_tf_cover(g.vertex_count(), &pairs(&g, &c.edges)));
        let exact = exact_min_tf_cover(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert_eq!(c.len(), exact.value);
        let opt = exact_min_2ecss(&g, DEFAULT_ORACLE_BUDGET).unwrap();
        prop_assert!(c.len() <= opt.value);
    }

    #[test]
    fn small_covers_match_enumeration(g in two_ec_graph(4, 8, 5)) {
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        prop_assert_eq!(Some(c.len()), brute_min_tf_cover(&g));
    }

    #[test]
    fn heuristic_cover_is_still_a_cover(g in two_ec_graph(6, 24, 30)) {
        let c = min_triangle_free_cover(&g, CoverBudget { max_vertices: 0, max_nodes: 0 }).unwrap();
        prop_assert!(!c.certified_minimum);
        prop_assert!(naive_tf_cover(g.vertex_count(), &pairs(&g, &c.edges)));
    }

    #[test]
    fn canonical_covers(g in two_ec_graph(6, 20, 14)) {
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        if let Ok((canon, stats)) = canonicalize(&g, &c) {
            let (n, m) = (g.vertex_count(), g.edge_count());
            prop_assert!(check_canonical(&canon).is_empty());
            prop_assert!(naive_tf_cover(n, &pairs(&g, &canon.edges)));
            prop_assert!(canon.len() <= c.len());
            // the objective is lexicographic over bounded counters
            prop_assert!(stats.iterations <= (c.len() + 1) * (n + 1) * (m + 1) * (n + 1));
            let again = canonicalize(&g, &canon).unwrap();
            prop_assert_eq!(again.1.iterations, 0);
            prop_assert_eq!(&again.0, &canon);
        }
    }

    #[test]
    fn classes_are_recomputed_consistently(g in two_ec_graph(6, 16, 10)) {
        let c = min_triangle_free_cover(&g, CoverBudget::default()).unwrap();
        let again = TwoEdgeCover::new(&g, c.edges.clone(), c.certified_minimum);
        prop_assert_eq!(again, c);
    }
}
