use cliquerelax_core::io::{graph_to_string, read_edge_list, LabelMap};
use cliquerelax_core::{
    degenerate_partitions, is_quasi_clique, modularity, Fraction, Graph, Partition, QuasiCliqueParams, VertexSubset,
};
use proptest::prelude::*;

fn edges_strategy(n: u32) -> impl Strategy<Value = Vec<(u32, u32)>> {
    proptest::collection::vec((0..n, 0..n), 1..60)
        .prop_map(|pairs| pairs.into_iter().filter(|(a, b)| a != b).collect::<Vec<_>>())
        .prop_filter("needs an edge", |e| !e.is_empty())
}

fn fraction() -> impl Strategy<Value = Fraction> {
    (1u64..=10, 1u64..=10).prop_map(|(a, b)| Fraction::new(a.min(b), a.max(b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn modularity_ignores_block_names(edges in edges_strategy(12), labels in proptest::collection::vec(0u32..5, 12), shift in 1u32..50) {
        let g = Graph::from_edges(12, edges).unwrap();
        let p = Partition::from_labels(&labels);
        let renamed: Vec<u32> = labels.iter().map(|&l| (4 - l) * shift + 7).collect();
        let q = modularity(&g, &p).unwrap();
        let q2 = modularity(&g, &Partition::from_labels(&renamed)).unwrap();
        prop_assert!((q.q - q2.q).abs() <= 1e-12);
        prop_assert_eq!(q.exact(), q2.exact());
        let internal: u64 = q.per_block.iter().map(|b| b.internal_edges).sum();
        let degree: u64 = q.per_block.iter().map(|b| b.total_degree).sum();
        prop_assert!(internal <= g.edge_count() as u64);
        prop_assert_eq!(degree, 2 * g.edge_count() as u64);
        prop_assert!(q.q >= -0.5 - 1e-12 && q.q < 1.0);
    }

    #[test]
    fn predicate_is_monotone_in_parameters(
        edges in edges_strategy(10),
        members in proptest::collection::btree_set(0u32..10, 1..=10),
        l in fraction(), g in fraction(), dl in fraction(), dg in fraction(),
    ) {
        let graph = Graph::from_edges(10, edges).unwrap();
        let s = VertexSubset::new(members.into_iter().collect(), 10).unwrap();
        let strict = QuasiCliqueParams::new(l, g).unwrap().with_min_size(1).unwrap();
        let looser = QuasiCliqueParams::new(
            Fraction::new(l.numer() * dl.numer(), l.denom() * dl.denom()).unwrap(),
            Fraction::new(g.numer() * dg.numer(), g.denom() * dg.denom()).unwrap(),
        ).unwrap().with_min_size(1).unwrap();
        if is_quasi_clique(&graph, &s, &strict).unwrap().0 {
            prop_assert!(is_quasi_clique(&graph, &s, &looser).unwrap().0);
        }
    }

    #[test]
    fn unit_parameters_accept_exactly_complete_subgraphs(
        edges in edges_strategy(8),
        members in proptest::collection::btree_set(0u32..8, 1..=8),
    ) {
        let g = Graph::from_edges(8, edges).unwrap();
        let list: Vec<u32> = members.into_iter().collect();
        let complete = list.iter().all(|&a| list.iter().all(|&b| a == b || g.has_edge(a, b)));
        let s = VertexSubset::new(list, 8).unwrap();
        prop_assert_eq!(is_quasi_clique(&g, &s, &QuasiCliqueParams::clique(1)).unwrap().0, complete);
    }

    #[test]
    fn ingestion_ignores_edge_order_and_direction(edges in edges_strategy(15), seed in any::<u64>()) {
        let text: String = edges.iter().map(|(a, b)| format!("v{a} v{b}\n")).collect();
        let (g, labels) = read_edge_list(text.as_bytes()).unwrap();
        let mut shuffled = edges.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed % k as u64) as usize);
        let flipped: String = shuffled.iter().map(|(a, b)| format!("v{b} v{a}\n")).collect();
        let (g2, labels2) = read_edge_list(flipped.as_bytes()).unwrap();
        // ids may differ; the labelled edge sets may not
        let named = |g: &Graph, l: &LabelMap| {
            let mut e: Vec<(String, String)> = g.edges().map(|(u, v)| {
                let (a, b) = (l.label(u).to_owned(), l.label(v).to_owned());
                if a < b { (a, b) } else { (b, a) }
            }).collect();
            e.sort();
            e
        };
        prop_assert_eq!(named(&g, &labels), named(&g2, &labels2));
    }

    #[test]
    fn equal_graphs_write_equal_bytes(edges in edges_strategy(15)) {
        let forward = Graph::from_edges(15, edges.iter().copied()).unwrap();
        let backward = Graph::from_edges(15, edges.iter().rev().map(|&(a, b)| (b, a))).unwrap();
        let labels = LabelMap::identity(15);
        prop_assert_eq!(graph_to_string(&forward, &labels, None), graph_to_string(&backward, &labels, None));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn degenerate_partitions_meet_their_bound(edges in edges_strategy(10), labels in proptest::collection::vec(0u32..4, 10), seed in any::<u64>(), eps in 0.0f64..0.2) {
        let g = Graph::from_edges(10, edges).unwrap();
        let reference = Partition::from_labels(&labels);
        let q_ref = modularity(&g, &reference).unwrap().q;
        let found = degenerate_partitions(&g, &reference, eps, 8, seed).unwrap();
        prop_assert!(found.len() <= 8);
        let mut seen = std::collections::HashSet::new();
        for (p, q) in &found {
            prop_assert_ne!(p.canonical(), reference.canonical());
            prop_assert!(seen.insert(p.canonical()));
            let rescored = modularity(&g, p).unwrap().q;
            prop_assert_eq!(rescored, *q);
            prop_assert!(rescored >= q_ref - eps - 1e-12);
        }
    }
}
