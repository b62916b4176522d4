mod common;

use proptest::prelude::*;

use lmk_core::graph::{
    bfs, components, er_generate, extract_lcc, ingest_edgelist, multi_source_bfs, read_graph,
    write_binary, write_edgelist,
};
use lmk_core::Graph;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..120, 0.0f64..6.0, any::<u64>())
        .prop_map(|(n, lambda, seed)| er_generate(n, lambda.min(n as f64), seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_matches_queue_oracle(g in graph(), s in any::<prop::sample::Index>()) {
        let s = s.index(g.node_count()) as u32;
        let adj = common::adjacency(&g);
        prop_assert_eq!(bfs(&g, s).unwrap().to_vec(), common::bfs(&adj, s));
    }

    #[test]
    fn multi_source_is_min_over_sources(
        g in graph(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6),
    ) {
        let n = g.node_count();
        let sources: Vec<u32> = picks.iter().map(|i| i.index(n) as u32).collect();
        let (dist, closest) = multi_source_bfs(&g, &sources).unwrap();
        let adj = common::adjacency(&g);
        for v in 0..n {
            let best = sources.iter().map(|&s| common::bfs(&adj, s)[v]).min().unwrap();
            prop_assert_eq!(dist[v], best);
            if best != common::INF {
                let owner = sources
                    .iter()
                    .copied()
                    .filter(|&s| common::bfs(&adj, s)[v] == best)
                    .min()
                    .unwrap();
                prop_assert_eq!(closest[v], owner);
            }
        }
    }

    #[test]
    fn components_agree_with_reachability(g in graph()) {
        let c = components(&g);
        let adj = common::adjacency(&g);
        let d0 = common::bfs(&adj, 0);
        for v in 0..g.node_count() as u32 {
            prop_assert_eq!(c.connected(0, v), d0[v as usize] != common::INF);
        }
        prop_assert_eq!(c.sizes_desc().iter().sum::<usize>(), g.node_count());
    }

    #[test]
    fn text_and_binary_round_trips(g in graph()) {
        let mut bin = Vec::new();
        write_binary(&g, &mut bin).unwrap();
        prop_assert_eq!(&read_graph(&bin[..]).unwrap(), &g);
        if g.edge_count() > 0 {
            let mut text = Vec::new();
            write_edgelist(&g, &mut text).unwrap();
            let back = ingest_edgelist(&text[..]).unwrap();
            // Relabelled by first appearance, so compare edge counts and the
            // degree multiset.
            prop_assert_eq!(back.graph.edge_count(), g.edge_count());
            let mut a: Vec<usize> = (0..g.node_count() as u32).map(|u| g.degree(u)).filter(|&d| d > 0).collect();
            let mut b: Vec<usize> = (0..back.graph.node_count() as u32).map(|u| back.graph.degree(u)).collect();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn lcc_is_connected_and_largest() {
    let g = er_generate(2000, 1.5, 4).unwrap();
    let (lcc, kept) = extract_lcc(&g).unwrap();
    assert_eq!(lcc.node_count(), components(&g).sizes_desc()[0]);
    assert_eq!(kept.len(), lcc.node_count());
    assert_eq!(components(&lcc).count(), 1);
    assert_eq!(common::edge_set(&lcc).len(), lcc.edge_count());
}

#[test]
fn generator_edge_count_bracket() {
    // m ~ Binomial(n(n−1)/2, λ/n): mean 24997.5, sd ≈ 158.1.
    let g = er_generate(10_000, 5.0, 42).unwrap();
    let m = g.edge_count() as f64;
    assert!((m - 24_997.5).abs() < 4.0 * 158.1, "{m}");
}
