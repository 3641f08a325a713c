use deltastar_core::parallel::near_boundary_edge_count;
use deltastar_core::{compute_delta_star, compute_delta_star_parallel, generate, Graph, Partition};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn case() -> impl Strategy<Value = (Graph, Partition)> {
    (2usize..=12, 1usize..=30, 1usize..=4, any::<u64>()).prop_map(|(n, m, k, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = generate::random_connected(n, m, &mut rng);
        let p = Partition::new(generate::random_partition(&g, k, &mut rng));
        (g, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn matches_sequential((g, p) in case()) {
        let seq = compute_delta_star(&g, 0).unwrap();
        for workers in [1, 2, 8] {
            let par = compute_delta_star_parallel(&g, &p, workers).unwrap();
            prop_assert_eq!(&par.result.coloring, &seq.coloring);
        }
    }

    #[test]
    fn boundary_stacks_suffice((g, p) in case()) {
        let par = compute_delta_star_parallel(&g, &p, 2).unwrap();
        prop_assert!(par.stats.boundary_stacks_sufficient);
        prop_assert!(par.stats.multi_colored_edges <= near_boundary_edge_count(&g, &p));
        prop_assert!(par.stats.merge.within_bound());
    }

    #[test]
    fn worker_count_does_not_change_output((g, p) in case()) {
        let one = compute_delta_star_parallel(&g, &p, 1).unwrap();
        let mut many = compute_delta_star_parallel(&g, &p, 8).unwrap();
        prop_assert_eq!(many.stats.workers, 8);
        many.stats.workers = 1;
        prop_assert_eq!(one, many);
    }
}

#[test]
fn c4_split_in_two() {
    let g = generate::cycle(4);
    let p = Partition::new(vec![vec![0, 1], vec![2, 3]]);
    let par = compute_delta_star_parallel(&g, &p, 2).unwrap();
    assert_eq!(par.result.class_count, 2);
    assert_eq!(
        par.result.coloring,
        compute_delta_star(&g, 0).unwrap().coloring
    );
}

#[test]
fn one_block_per_vertex() {
    let g = generate::grid(4, 5);
    let p = Partition::new((0..g.vertex_count()).map(|v| vec![v]).collect());
    let par = compute_delta_star_parallel(&g, &p, 4).unwrap();
    assert_eq!(
        par.result.coloring,
        compute_delta_star(&g, 0).unwrap().coloring
    );
}
