//! Spanning trees of dense graphs via the array-scan form of Prim's
//! algorithm: `O(n^2)` time, `O(n)` working space, no heap.
//!
//! The dense setting makes the array scan optimal — every vertex has `n-1`
//! candidate edges, so a heap only adds log factors.

use crate::deadline::Deadline;
use crate::graph::DenseGraph;

/// Whether the tree minimizes or maximizes total weight.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum TreeSense {
    Minimum,
    Maximum,
}

impl TreeSense {
    /// Transforms a weight into the key Prim minimizes. Maximum-sense
    /// trees run minimum-sense Prim on negated weights.
    #[inline]
    fn key(&self, w: f64) -> f64 {
        match self {
            TreeSense::Minimum => w,
            TreeSense::Maximum => -w,
        }
    }
}

/// One tree edge. `seq` is the Prim insertion index, `0..n-1`, used as a
/// deterministic tie-breaker downstream.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub seq: usize,
}

impl TreeEdge {
    /// The endpoint that is not `vertex`.
    #[inline]
    pub fn other(&self, vertex: usize) -> usize {
        if self.u == vertex {
            self.v
        } else {
            self.u
        }
    }
}

/// A spanning tree over `n` vertices: exactly `n-1` edges, acyclic,
/// single component.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<TreeEdge>,
    adjacency: Vec<Vec<usize>>,
    sense: TreeSense,
}

impl SpanningTree {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn sense(&self) -> TreeSense {
        self.sense
    }

    /// Edges in Prim insertion order.
    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// Indices into [`edges`](Self::edges) of the edges incident to `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Sum of edge weights in insertion order.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

/// Builds a minimum or maximum spanning tree with Prim's algorithm.
///
/// Deterministic: the scan starts at vertex 0 and breaks key ties toward
/// the smallest vertex id. Downstream distance values never depend on
/// which spanning tree ties produce.
pub fn prim_spanning_tree(graph: &DenseGraph, sense: TreeSense) -> SpanningTree {
    prim_spanning_tree_within(graph, sense, &Deadline::none()).expect("no deadline to expire")
}

/// Deadline-aware variant of [`prim_spanning_tree`]; returns `None` when
/// the deadline expires. Polled once per added vertex.
pub fn prim_spanning_tree_within(
    graph: &DenseGraph,
    sense: TreeSense,
    deadline: &Deadline,
) -> Option<SpanningTree> {
    let n = graph.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut in_tree = vec![false; n];
    // key[v]: best transformed weight from v into the tree; from[v]: the
    // tree endpoint realizing it.
    let mut key = vec![f64::INFINITY; n];
    let mut from = vec![0usize; n];

    in_tree[0] = true;
    for (v, slot) in key.iter_mut().enumerate().skip(1) {
        *slot = sense.key(graph.weight(0, v));
    }

    for seq in 0..n.saturating_sub(1) {
        if deadline.expired() {
            return None;
        }
        // Smallest key wins; the ascending scan with a strict compare
        // breaks ties toward the smallest vertex id.
        let mut best = usize::MAX;
        let mut best_key = f64::INFINITY;
        for v in 0..n {
            if !in_tree[v] && key[v] < best_key {
                best_key = key[v];
                best = v;
            }
        }
        let u = from[best];
        // Weight is re-read from the graph so maximum-sense trees carry
        // original weights, not negated ones.
        edges.push(TreeEdge {
            u,
            v: best,
            weight: graph.weight(u, best),
            seq,
        });
        in_tree[best] = true;
        for v in 0..n {
            if !in_tree[v] {
                let candidate = sense.key(graph.weight(best, v));
                if candidate < key[v] {
                    key[v] = candidate;
                    from[v] = best;
                }
            }
        }
    }

    let mut adjacency = vec![Vec::new(); n];
    for (idx, edge) in edges.iter().enumerate() {
        adjacency[edge.u].push(idx);
        adjacency[edge.v].push(idx);
    }
    Some(SpanningTree {
        n,
        edges,
        adjacency,
        sense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::generate_random_points;
    use crate::graph::complete_graph_from_points;

    /// Exhaustive oracle: the minimum spanning total over all edge subsets
    /// of size n-1 that connect the graph. Totals are summed over weights
    /// sorted by bit pattern so comparisons are order-independent.
    fn enumerate_min_spanning(graph: &DenseGraph) -> (f64, Vec<(usize, usize)>) {
        let n = graph.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut best_total = f64::INFINITY;
        let mut best_edges = Vec::new();
        let mut chosen = Vec::with_capacity(n - 1);

        fn spans(n: usize, edges: &[(usize, usize)]) -> bool {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            let mut components = n;
            for &(u, v) in edges {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    components -= 1;
                }
            }
            components == 1
        }

        fn walk(
            start: usize,
            need: usize,
            pairs: &[(usize, usize)],
            chosen: &mut Vec<(usize, usize)>,
            graph: &DenseGraph,
            best_total: &mut f64,
            best_edges: &mut Vec<(usize, usize)>,
        ) {
            if need == 0 {
                if spans(graph.len(), chosen) {
                    let mut ws: Vec<f64> =
                        chosen.iter().map(|&(u, v)| graph.weight(u, v)).collect();
                    ws.sort_by_key(|w| w.to_bits());
                    let total: f64 = ws.iter().sum();
                    if total < *best_total {
                        *best_total = total;
                        *best_edges = chosen.clone();
                    }
                }
                return;
            }
            for idx in start..=pairs.len().saturating_sub(need) {
                chosen.push(pairs[idx]);
                walk(
                    idx + 1,
                    need - 1,
                    pairs,
                    chosen,
                    graph,
                    best_total,
                    best_edges,
                );
                chosen.pop();
            }
        }

        walk(
            0,
            n - 1,
            &pairs,
            &mut chosen,
            graph,
            &mut best_total,
            &mut best_edges,
        );
        (best_total, best_edges)
    }

    fn sorted_total(tree: &SpanningTree) -> f64 {
        let mut ws: Vec<f64> = tree.edges().iter().map(|e| e.weight).collect();
        ws.sort_by_key(|w| w.to_bits());
        ws.iter().sum()
    }

    fn canonical_edge_set(tree: &SpanningTree) -> Vec<(usize, usize)> {
        let mut set: Vec<(usize, usize)> = tree
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        set.sort();
        set
    }

    #[test]
    fn single_vertex_has_no_edges() {
        let g = DenseGraph::from_weights(1, vec![0.0]).unwrap();
        let t = prim_spanning_tree(&g, TreeSense::Minimum);
        assert!(t.edges().is_empty());
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn triangle_mst_drops_heaviest_edge() {
        let g =
            DenseGraph::from_weights(3, vec![0.0, 1.0, 3.0, 1.0, 0.0, 2.0, 3.0, 2.0, 0.0]).unwrap();
        let t = prim_spanning_tree(&g, TreeSense::Minimum);
        assert_eq!(canonical_edge_set(&t), vec![(0, 1), (1, 2)]);
        assert_eq!(t.total_weight(), 3.0);
        // All three spanning trees enumerated: {01,12}=3, {01,02}=4, {02,12}=5.
        let (oracle_total, _) = enumerate_min_spanning(&g);
        assert_eq!(oracle_total, 3.0);
    }

    #[test]
    fn eight_random_points_match_exhaustive_enumeration() {
        let points = generate_random_points(8, 2, 7);
        let g = complete_graph_from_points(&points).unwrap();
        let t = prim_spanning_tree(&g, TreeSense::Minimum);
        let (oracle_total, oracle_edges) = enumerate_min_spanning(&g);
        assert_eq!(sorted_total(&t), oracle_total);
        // Random f64 weights are distinct, so the MST is unique.
        let mut oracle_sorted = oracle_edges;
        oracle_sorted.sort();
        assert_eq!(canonical_edge_set(&t), oracle_sorted);
    }

    #[test]
    fn maximum_tree_matches_enumeration_on_negated_graph() {
        let points = generate_random_points(7, 3, 21);
        let g = complete_graph_from_points(&points).unwrap();
        let t = prim_spanning_tree(&g, TreeSense::Maximum);
        let (neg_total, neg_edges) = enumerate_min_spanning(&g.negated());
        assert_eq!(sorted_total(&t), -neg_total);
        let mut expected = neg_edges;
        expected.sort();
        assert_eq!(canonical_edge_set(&t), expected);
    }

    #[test]
    fn max_min_negation_duality_is_exact() {
        for seed in 0..10 {
            let points = generate_random_points(12, 2, 1000 + seed);
            let g = complete_graph_from_points(&points).unwrap();
            let max_tree = prim_spanning_tree(&g, TreeSense::Maximum);
            let min_on_negated = prim_spanning_tree(&g.negated(), TreeSense::Minimum);
            assert_eq!(max_tree.total_weight(), -min_on_negated.total_weight());
            assert_eq!(
                canonical_edge_set(&max_tree),
                canonical_edge_set(&min_on_negated)
            );
        }
    }

    #[test]
    fn tree_is_connected_with_n_minus_one_edges() {
        for seed in 0..20 {
            let n = 2 + (seed as usize % 30);
            let points = generate_random_points(n, 2, 500 + seed);
            let g = complete_graph_from_points(&points).unwrap();
            let t = prim_spanning_tree(&g, TreeSense::Minimum);
            assert_eq!(t.edges().len(), n - 1);
            for e in t.edges() {
                assert_eq!(e.weight.to_bits(), g.weight(e.u, e.v).to_bits());
            }
            // Connectivity by traversal over the adjacency lists.
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for &ei in t.incident(v) {
                    let w = t.edges()[ei].other(v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn equal_key_ties_pick_smallest_vertex_id() {
        // All edges weigh 1, so every candidate ties at every step; the
        // scan must grow the tree 0-1, then attach 2 from vertex 0.
        let g =
            DenseGraph::from_weights(3, vec![0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0]).unwrap();
        let t = prim_spanning_tree(&g, TreeSense::Minimum);
        let picked: Vec<(usize, usize)> = t.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(picked, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn determinism_across_runs() {
        let points = generate_random_points(16, 2, 77);
        let g = complete_graph_from_points(&points).unwrap();
        let a = prim_spanning_tree(&g, TreeSense::Minimum);
        let b = prim_spanning_tree(&g, TreeSense::Minimum);
        assert_eq!(a.edges(), b.edges());
    }
}
