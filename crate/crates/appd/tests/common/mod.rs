#![allow(dead_code)]

//! Shared graph generators for the integration suites.

use appd::bench::{generate_random_points, SplitMix64};
use appd::{complete_graph_from_points, DenseGraph, PointSet};

/// Complete graph of Euclidean distances between seeded random points.
pub fn euclidean_graph(n: usize, seed: u64) -> DenseGraph {
    let points = generate_random_points(n, 2, seed);
    complete_graph_from_points(&points).expect("random points are finite")
}

/// Complete graph over integer-quantized coordinates: many duplicate
/// edge weights, including zero-weight edges between co-located points.
pub fn quantized_graph(n: usize, seed: u64) -> DenseGraph {
    let points = generate_random_points(n, 2, seed);
    let coords: Vec<f64> = points.coords().iter().map(|c| (c * 4.0).floor()).collect();
    let points = PointSet::new(n, 2, coords).expect("quantized coordinates are finite");
    complete_graph_from_points(&points).expect("quantized points are finite")
}

/// Symmetric weight matrix with negative and heavily duplicated weights,
/// drawn from a coarse grid in [-2, 2).
pub fn signed_grid_graph(n: usize, seed: u64) -> DenseGraph {
    let mut rng = SplitMix64::new(seed);
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let w = ((rng.next_f64() * 16.0).floor() - 8.0) / 4.0;
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
    }
    DenseGraph::from_weights(n, weights).expect("grid weights are valid")
}

/// Mixes the three families deterministically.
pub fn graph_family(n: usize, seed: u64) -> DenseGraph {
    match seed % 3 {
        0 => euclidean_graph(n, seed),
        1 => quantized_graph(n, seed),
        _ => signed_grid_graph(n, seed),
    }
}

/// Seeded Fisher-Yates permutation of `0..n`.
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::new(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}
