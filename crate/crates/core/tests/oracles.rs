//! Library results against the direct oracles in `common`.

mod common;

use num_bigint::BigInt;
use rootpoly::activity::{interior_polynomial, vertex_activity_tutte};
use rootpoly::harness::{plane_fixture, Corpus, NamedGraph};
use rootpoly::scalar::binomial;
use rootpoly::{
    BipartiteGraph, HyperedgeOrder, Hypergraph, IntPolynomial, OrdinaryGraph, RootPolytope, Side,
};

fn graphs() -> Vec<NamedGraph> {
    let mut g = Corpus::fixtures();
    g.extend(Corpus::small_bipartite(7));
    g.extend(Corpus::complete(3));
    g.extend(Corpus::random_bipartite(12, 9, 11));
    g
}

#[test]
fn spanning_tree_counts() {
    for g in graphs() {
        let edges = common::unified_edges(&g.graph);
        let n = g.graph.vertex_count();
        let listed = g.graph.enumerate_spanning_trees().unwrap().len();
        assert_eq!(
            listed,
            common::brute_spanning_trees(n, &edges).len(),
            "{}",
            g.name
        );
        assert_eq!(
            BigInt::from(listed),
            common::matrix_tree_count(n, &edges),
            "{}",
            g.name
        );
    }
    let plane = plane_fixture();
    assert_eq!(
        common::matrix_tree_count(plane.vertex_count(), &common::unified_edges(&plane)),
        BigInt::from(217)
    );
}

#[test]
fn ordinary_spanning_tree_counts() {
    for g in Corpus::small_ordinary(5) {
        let n = g.graph.vertices().len();
        let trees = g.graph.spanning_trees().unwrap().len();
        assert_eq!(
            BigInt::from(trees),
            common::matrix_tree_count(n, g.graph.edges()),
            "{}",
            g.name
        );
    }
}

#[test]
fn hypertrees_match_definition() {
    for g in graphs() {
        for side in [Side::Emerald, Side::Violet] {
            let h = Hypergraph::new(&g.graph, side).unwrap();
            let direct = common::brute_hypertrees(&g.graph, side);
            let listed: std::collections::HashSet<Vec<i64>> = h
                .enumerate_hypertrees()
                .unwrap()
                .to_vecs()
                .into_iter()
                .collect();
            assert_eq!(listed, direct, "{} {side}", g.name);
        }
    }
}

#[test]
fn interior_matches_transfer_definition() {
    for (i, g) in graphs().into_iter().enumerate() {
        for side in [Side::Emerald, Side::Violet] {
            let h = Hypergraph::new(&g.graph, side).unwrap();
            let order = HyperedgeOrder::random(h.size(), i as u64);
            let direct = common::brute_interior(&common::brute_hypertrees(&g.graph, side), &order);
            assert_eq!(
                interior_polynomial(&h, &order).unwrap(),
                direct,
                "{} {side}",
                g.name
            );
        }
    }
}

#[test]
fn four_cycle_counts() {
    for g in graphs() {
        assert_eq!(
            g.graph.count_four_cycles(),
            common::brute_four_cycles(&g.graph),
            "{}",
            g.name
        );
    }
    assert_eq!(BipartiteGraph::complete(3, 3).count_four_cycles(), 9);
}

#[test]
fn ehrhart_counts_match_vertex_sums() {
    for g in graphs().into_iter().filter(|g| g.graph.vertex_count() <= 7) {
        let q = RootPolytope::new(&g.graph).unwrap();
        let data = q.ehrhart_coefficients().unwrap();
        for s in 0..=3 {
            let direct = common::brute_dilate_count(&g.graph, s);
            assert_eq!(q.count(s), direct as u64, "{} s={s}", g.name);
            assert_eq!(
                data.value(s as i64),
                BigInt::from(direct),
                "{} s={s}",
                g.name
            );
        }
    }
}

#[test]
fn tutte_against_deletion_contraction() {
    let mut all = Corpus::small_ordinary(5);
    all.extend(Corpus::random_ordinary(10, 8, 3));
    for g in all {
        let n = g.graph.vertices().len();
        let expected =
            IntPolynomial::from_i64s(&common::deletion_contraction_x1(n, g.graph.edges()));
        let edge_order: Vec<usize> = (0..g.graph.edges().len()).rev().collect();
        assert_eq!(
            g.graph.tutte_x1_oracle(&edge_order).unwrap(),
            expected,
            "{}",
            g.name
        );
        let vertex_order: Vec<usize> = (0..n).rev().collect();
        assert_eq!(
            vertex_activity_tutte(&g.graph, &vertex_order).unwrap(),
            expected,
            "{}",
            g.name
        );
    }
}

#[test]
fn small_tutte_values() {
    let triangle = OrdinaryGraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert_eq!(
        common::deletion_contraction_x1(3, triangle.edges()),
        vec![1, 1, 1]
    );
    let triple = OrdinaryGraph::from_indices(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
    assert_eq!(
        common::deletion_contraction_x1(2, triple.edges()),
        vec![2, 1]
    );
    let path = OrdinaryGraph::from_indices(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(
        common::deletion_contraction_x1(4, path.edges()),
        vec![0, 0, 0, 1]
    );
}

#[test]
fn complete_graph_coefficients() {
    for m in 1..=4usize {
        for n in 1..=4usize {
            let g = BipartiteGraph::complete(m, n);
            let h = Hypergraph::new(&g, Side::Emerald).unwrap();
            let expected = IntPolynomial::new(
                (0..m.min(n) as i64)
                    .map(|k| binomial(m as i64 - 1, k) * binomial(n as i64 - 1, k))
                    .collect(),
            );
            assert_eq!(
                interior_polynomial(&h, &HyperedgeOrder::identity(m)).unwrap(),
                expected
            );
        }
    }
}

#[test]
fn plane_fixture_values() {
    let g = plane_fixture();
    let h = Hypergraph::new(&g, Side::Emerald).unwrap();
    assert_eq!(h.enumerate_hypertrees().unwrap().len(), 16);
    assert_eq!(
        interior_polynomial(&h, &HyperedgeOrder::random(4, 1)).unwrap(),
        IntPolynomial::from_i64s(&[1, 4, 7, 4])
    );
    assert_eq!(common::brute_four_cycles(&g), 3);
}
