//! Property tests of the distance-matrix invariants on randomized
//! graphs: Euclidean point clouds, tie-heavy quantized grids, and
//! signed weights.

mod common;

use appd::{
    appd_algo4, appd_algo4_instrumented, appd_floyd, appd_mst_path, brute_force_appd, ProblemSense,
};
use common::{graph_family, seeded_permutation};
use proptest::prelude::*;

fn sense_of(widest: bool) -> ProblemSense {
    if widest {
        ProblemSense::Widest
    } else {
        ProblemSense::Minimax
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn all_solvers_agree_bitwise(n in 2usize..33, seed in any::<u64>(), widest: bool) {
        let graph = graph_family(n, seed);
        let problem = sense_of(widest);
        let copied = appd_algo4(&graph, problem);
        let floyd = appd_floyd(&graph, problem);
        let walked = appd_mst_path(&graph, problem);
        prop_assert!(copied.bitwise_eq(&floyd), "algo4 vs floyd at {:?}", copied.first_difference(&floyd));
        prop_assert!(walked.bitwise_eq(&floyd), "mst-path vs floyd at {:?}", walked.first_difference(&floyd));
        if n <= 8 {
            let brute = brute_force_appd(&graph, problem).unwrap();
            prop_assert!(brute.bitwise_eq(&floyd), "brute vs floyd at {:?}", brute.first_difference(&floyd));
        }
    }

    #[test]
    fn matrices_are_symmetric_with_zero_diagonal(n in 2usize..33, seed in any::<u64>(), widest: bool) {
        let matrix = appd_algo4(&graph_family(n, seed), sense_of(widest));
        prop_assert!(matrix.is_symmetric_with_zero_diagonal());
    }

    #[test]
    fn triangle_inequality_in_both_senses(n in 2usize..25, seed in any::<u64>(), widest: bool) {
        let problem = sense_of(widest);
        let matrix = appd_algo4(&graph_family(n, seed), problem);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in 0..n {
                    let through = match problem {
                        ProblemSense::Minimax => matrix.get(i, k).max(matrix.get(k, j)),
                        ProblemSense::Widest => matrix.get(i, k).min(matrix.get(k, j)),
                    };
                    match problem {
                        ProblemSense::Minimax => prop_assert!(matrix.get(i, j) <= through),
                        ProblemSense::Widest => prop_assert!(matrix.get(i, j) >= through),
                    }
                }
            }
        }
    }

    #[test]
    fn every_distance_is_a_copied_weight(n in 2usize..33, seed in any::<u64>(), widest: bool) {
        let graph = graph_family(n, seed);
        let matrix = appd_algo4(&graph, sense_of(widest));
        let mut weight_bits: Vec<u64> = graph.weights().iter().map(|w| w.to_bits()).collect();
        weight_bits.sort_unstable();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert!(
                        weight_bits.binary_search(&matrix.get(i, j).to_bits()).is_ok(),
                        "({}, {}) -> {} is not an input weight", i, j, matrix.get(i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn negation_swaps_the_senses_exactly(n in 2usize..33, seed in any::<u64>()) {
        let graph = graph_family(n, seed);
        let minimax = appd_algo4(&graph, ProblemSense::Minimax);
        let dual = appd_algo4(&graph.negated(), ProblemSense::Widest).negated();
        prop_assert!(minimax.bitwise_eq(&dual), "diff at {:?}", minimax.first_difference(&dual));
    }

    #[test]
    fn relabeling_commutes_with_the_solver(n in 2usize..25, seed in any::<u64>(), widest: bool) {
        let graph = graph_family(n, seed);
        let problem = sense_of(widest);
        let perm = seeded_permutation(n, seed ^ 0x9e3779b97f4a7c15);
        let direct = appd_algo4(&graph, problem).permuted(&perm);
        let relabeled = appd_algo4(&graph.permuted(&perm), problem);
        prop_assert!(direct.bitwise_eq(&relabeled), "diff at {:?}", direct.first_difference(&relabeled));
    }

    #[test]
    fn fill_counters_stay_in_bounds(n in 2usize..65, seed in any::<u64>(), widest: bool) {
        let graph = graph_family(n, seed);
        let (_, stats) = appd_algo4_instrumented(&graph, sense_of(widest));
        prop_assert_eq!(stats.pair_writes, (n * (n - 1) / 2) as u64);
        prop_assert!(stats.nodes_visited <= (n * n) as u64);
    }
}
