use dpcolor::graph::{ear_decomposition, enumerate_graphs, Graph, GraphClass};
use proptest::prelude::*;

/// Brute-force isomorphism over all vertex permutations.
fn isomorphic(a: &Graph, b: &Graph) -> bool {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    perms(a.n())
        .iter()
        .any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
}

fn all(n: usize, class: GraphClass) -> Vec<Graph> {
    enumerate_graphs(n, class).unwrap().collect()
}

#[test]
fn class_sizes_match_known_counts() {
    let connected = [1, 1, 2, 6, 21, 112, 853];
    let trees = [1, 1, 1, 2, 3, 6, 11];
    for n in 1..=7 {
        assert_eq!(all(n, GraphClass::Connected).len(), connected[n - 1], "connected n={n}");
        assert_eq!(all(n, GraphClass::Tree).len(), trees[n - 1], "trees n={n}");
    }
    for (n, want) in [(3, 1), (4, 3), (5, 10), (6, 56), (7, 468)] {
        assert_eq!(all(n, GraphClass::TwoConnected).len(), want, "2-connected n={n}");
    }
    for (n, want) in [(3, 1), (4, 2), (5, 5), (6, 13), (7, 33)] {
        assert_eq!(all(n, GraphClass::Unicyclic).len(), want, "unicyclic n={n}");
    }
}

#[test]
fn no_isomorphic_duplicates_and_class_membership() {
    for n in 1..=6 {
        for class in [GraphClass::Connected, GraphClass::TwoConnected, GraphClass::Unicyclic, GraphClass::Tree] {
            let gs = all(n, class);
            for (i, a) in gs.iter().enumerate() {
                assert!(class.contains(a));
                for b in &gs[i + 1..] {
                    assert!(!isomorphic(a, b), "{a:?} and {b:?} both listed for {class} n={n}");
                }
            }
        }
    }
}

#[test]
fn ear_decompositions_of_two_connected_graphs() {
    for n in 3..=7 {
        for g in all(n, GraphClass::TwoConnected) {
            let d = ear_decomposition(&g, None).unwrap();
            d.validate(&g).unwrap();
            assert_eq!(d.ears.len(), g.edge_count() - g.n() + 1 - 1, "{g:?}");
            for cycle in g.cycles().into_iter().take(3) {
                let d = ear_decomposition(&g, Some(&cycle)).unwrap();
                d.validate(&g).unwrap();
                assert_eq!(d.initial_cycle.len(), cycle.len());
            }
        }
    }
}

#[test]
fn graphs_without_two_connectivity_have_no_ear_decomposition() {
    let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    assert!(ear_decomposition(&path, None).is_err());
    let bowtie = Graph::new(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
    assert!(ear_decomposition(&bowtie, None).is_err());
}

fn random_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn spanning_forest_is_acyclic_and_spanning(g in random_graph()) {
        let forest = g.spanning_forest();
        let f = g.edge_subgraph(&forest).unwrap();
        prop_assert!(f.is_forest());
        prop_assert_eq!(forest.len(), g.n() - g.components().len());
        prop_assert_eq!(f.components().len(), g.components().len());
        if g.is_connected() {
            let t = g.spanning_tree().unwrap();
            prop_assert_eq!(t.len(), g.n() - 1);
            prop_assert!(g.edge_subgraph(&t).unwrap().is_tree());
        } else {
            prop_assert!(g.spanning_tree().is_err());
        }
    }

    #[test]
    fn text_format_round_trips(g in random_graph()) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }
}
