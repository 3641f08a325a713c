use deltastar_core::generate;
use deltastar_core::oracle::{
    oracle_delta, oracle_delta_with, oracle_global, transitive_closure, SquareRule,
};
use deltastar_core::{compute_delta_star, compute_global_coloring, EdgeColoring, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn oracle_star(g: &Graph) -> EdgeColoring {
    transitive_closure(&oracle_delta(g))
}

#[test]
fn all_connected_graphs_up_to_six_vertices() {
    for n in 1..=6 {
        for g in generate::connected_graphs(n) {
            let fast = compute_delta_star(&g, 0).unwrap();
            let slow = oracle_star(&g);
            assert_eq!(
                fast.coloring.first_difference(&slow),
                None,
                "mismatch on {:?}",
                g.edges()
            );
            assert_eq!(fast.stats.fresh_colors, 0);
        }
    }
}

#[test]
fn square_rule_variants_agree_on_delta_star() {
    for n in 1..=6 {
        for g in generate::connected_graphs(n) {
            let a = transitive_closure(&oracle_delta_with(&g, SquareRule::SingleTop));
            let b = transitive_closure(&oracle_delta_with(&g, SquareRule::SingleUniqueTop));
            assert_eq!(a, b, "rules disagree on {:?}", g.edges());
        }
    }
}

#[test]
fn named_families() {
    let graphs = [
        generate::grid(3, 5),
        generate::hypercube(4),
        generate::prism(6),
        generate::mobius_ladder(5),
        generate::complete_bipartite(3, 3),
        generate::complete(5),
        generate::star(5),
        generate::cycle(9),
    ];
    for g in &graphs {
        for v0 in [0, g.vertex_count() - 1] {
            assert_eq!(compute_delta_star(g, v0).unwrap().coloring, oracle_star(g));
        }
    }
}

fn random_graph() -> impl Strategy<Value = (Graph, u64)> {
    (2usize..=12, 0usize..3, any::<u64>()).prop_map(|(n, density, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = match density {
            0 => n - 1,
            1 => 3 * n / 2,
            _ => 3 * n,
        };
        (generate::random_connected(n, m, &mut rng), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn random_graphs_match_oracle((g, seed) in random_graph()) {
        let v0 = (seed as usize) % g.vertex_count();
        let fast = compute_delta_star(&g, v0).unwrap();
        prop_assert_eq!(fast.coloring, oracle_star(&g));
    }

    #[test]
    fn result_independent_of_root((g, _) in random_graph()) {
        let first = compute_delta_star(&g, 0).unwrap().coloring;
        for v0 in 1..g.vertex_count() {
            prop_assert_eq!(&compute_delta_star(&g, v0).unwrap().coloring, &first);
        }
    }

    #[test]
    fn relabeling_preserves_classes((g, seed) in random_graph()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let perm = generate::random_permutation(g.vertex_count(), &mut rng);
        let h = g.relabeled(&perm);
        let a = compute_delta_star(&g, 0).unwrap();
        let b = compute_delta_star(&h, 0).unwrap();
        prop_assert_eq!(a.class_count, b.class_count);
        let mut sa = a.coloring.class_sizes();
        let mut sb = b.coloring.class_sizes();
        sa.sort_unstable();
        sb.sort_unstable();
        prop_assert_eq!(sa, sb);
    }

    #[test]
    fn partial_treated_sets_match_oracle((g, seed) in random_graph()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let size = 1 + (seed as usize / 7) % n;
        let w = generate::random_connected_subset(&g, (seed as usize) % n, size, &mut rng);
        let fast = compute_global_coloring(&g, &w, w[0]).unwrap();
        prop_assert_eq!(fast.coloring, oracle_global(&g, &w).unwrap());
    }

    #[test]
    fn coverage_grows_with_treated_set((g, seed) in random_graph()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.vertex_count();
        let big = generate::random_connected_subset(&g, 0, n, &mut rng);
        let mut last = 0;
        for k in 1..=big.len() {
            let w = &big[..k];
            if !g.induces_connected(w) {
                continue;
            }
            let r = compute_global_coloring(&g, w, w[0]).unwrap();
            prop_assert!(r.covered_edges >= last);
            last = r.covered_edges;
        }
    }
}
