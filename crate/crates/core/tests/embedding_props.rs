mod common;

use proptest::prelude::*;

use lmk_core::embedding::{read_embedding, write_embedding};
use lmk_core::graph::{er_generate, extract_lcc};
use lmk_core::{build_embedding, AnyEmbedding, HopEmbedding, LandmarkFamily};

fn connected(n: usize, lambda: f64, seed: u64) -> lmk_core::Graph {
    extract_lcc(&er_generate(n, lambda.min(n as f64), seed).unwrap())
        .unwrap()
        .0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sandwich_symmetry_and_zero_diagonal(
        n in 2usize..150, lambda in 1.5f64..7.0, gseed in any::<u64>(),
        base in 2u32..4, max_exp in 0u32..4, rounds in 1u32..4, fseed in any::<u64>(),
    ) {
        let g = connected(n, lambda, gseed);
        let n = g.node_count();
        let fam = LandmarkFamily::sample(n, base, max_exp, rounds, fseed).unwrap();
        let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
        let d = common::all_pairs(&common::adjacency(&g));
        for u in 0..n as u32 {
            prop_assert_eq!(emb.lower_bound(u, u), 0);
            for v in 0..n as u32 {
                let b = emb.query(u, v).unwrap();
                let exact = d[u as usize][v as usize];
                prop_assert!(b.lb <= exact);
                prop_assert!(b.ub.is_some_and(|ub| exact <= ub));
                let r = emb.query(v, u).unwrap();
                prop_assert_eq!(b, r);
            }
        }
    }

    #[test]
    fn extra_rounds_tighten_bounds(
        n in 2usize..150, lambda in 1.5f64..7.0, gseed in any::<u64>(),
        rounds in 1u32..4, extra in 1u32..4, fseed in any::<u64>(),
    ) {
        let g = connected(n, lambda, gseed);
        let n = g.node_count();
        let small: HopEmbedding =
            build_embedding(&g, &LandmarkFamily::sample(n, 2, 2, rounds, fseed).unwrap()).unwrap();
        let large: HopEmbedding =
            build_embedding(&g, &LandmarkFamily::sample(n, 2, 2, rounds + extra, fseed).unwrap()).unwrap();
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                let (a, b) = (small.query(u, v).unwrap(), large.query(u, v).unwrap());
                prop_assert!(b.lb >= a.lb);
                prop_assert!(b.ub.unwrap() <= a.ub.unwrap());
            }
        }
    }
}

#[test]
fn nested_sets_are_closer() {
    let g = connected(300, 4.0, 7);
    let n = g.node_count() as u32;
    // One round: {a} ⊆ {a, b} ⊆ {a, b, c, d}.
    let sets = vec![vec![0], vec![0, n / 2], vec![0, n / 2, n / 3, n - 1]];
    let fam = LandmarkFamily::from_sets(n as usize, 2, 2, 0, sets).unwrap();
    let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
    for u in 0..n {
        let row = emb.row(u);
        assert!(row[2] <= row[1] && row[1] <= row[0]);
    }
}

#[test]
fn embedding_files_are_reproducible() {
    let g = er_generate(1500, 5.0, 3).unwrap();
    let bytes = || {
        let fam = LandmarkFamily::sample(1500, 2, 3, 5, 99).unwrap();
        let emb: HopEmbedding = build_embedding(&g, &fam).unwrap();
        let mut out = Vec::new();
        write_embedding(&emb, &mut out).unwrap();
        out
    };
    let a = bytes();
    assert_eq!(a, bytes());
    match read_embedding(&a[..]).unwrap() {
        AnyEmbedding::Hops(e) => assert_eq!(e.node_count(), 1500),
        other => panic!("{:?}", other.builder()),
    }
}

#[test]
fn learned_file_round_trip_refuses_upper_bounds() {
    let g = connected(200, 4.0, 1);
    let n = g.node_count();
    let fam = LandmarkFamily::sample(n, 2, 2, 3, 5).unwrap();
    let emb: lmk_core::RealEmbedding = build_embedding(&g, &fam).unwrap();
    let learned = emb.into_learned();
    let mut out = Vec::new();
    write_embedding(&learned, &mut out).unwrap();
    let AnyEmbedding::Real(back) = read_embedding(&out[..]).unwrap() else {
        panic!("expected real coordinates");
    };
    assert!(back.query_lower(0, 1).is_ok());
    assert!(back.query(0, 1).is_err());
}
