//! Reference APPD solvers used to cross-check the calculate-and-copy
//! implementation.
//!
//! * [`appd_floyd`] — Floyd-Warshall with min/max relaxation, `O(n^3)`.
//! * [`appd_mst_path`] — spanning-tree construction plus per-pair tree
//!   path walks.
//! * [`brute_force_appd`] — literal enumeration of all simple paths,
//!   capped at 8 vertices.
//!
//! All of them return matrices bit-identical to [`appd_algo4`]
//! (values are copied edge weights, so equality is exact).
//!
//! [`appd_algo4`]: crate::algo4::appd_algo4

use crate::deadline::Deadline;
use crate::graph::{DenseGraph, DistanceMatrix, ProblemSense};
use crate::mst::{prim_spanning_tree_within, TreeSense};
use crate::{Error, Result};

/// Largest vertex count accepted by the exhaustive path enumeration; the
/// simple-path count grows factorially past this.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 8;

/// Floyd-Warshall variant: the additive relaxation is replaced by
/// min-of-max (minimax) or max-of-min (widest) selection, with the
/// intermediate vertex as the outermost loop.
pub fn appd_floyd(graph: &DenseGraph, problem: ProblemSense) -> DistanceMatrix {
    appd_floyd_within(graph, problem, &Deadline::none()).expect("no deadline to expire")
}

/// Deadline-aware variant of [`appd_floyd`], polled once per intermediate
/// vertex (one poll per `O(n^2)` sweep).
pub fn appd_floyd_within(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
) -> Option<DistanceMatrix> {
    let n = graph.len();
    let mut values = vec![0.0; n * n];
    if appd_floyd_within_into(graph, problem, deadline, &mut values) {
        Some(DistanceMatrix::from_values(n, values, problem))
    } else {
        None
    }
}

/// Allocation-free form of [`appd_floyd_within`]: relaxes into a
/// caller-owned `n * n` buffer (previous contents do not matter).
pub fn appd_floyd_within_into(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
    values: &mut [f64],
) -> bool {
    let n = graph.len();
    assert_eq!(values.len(), n * n, "output buffer has wrong length");
    values.copy_from_slice(graph.weights());

    for k in 0..n {
        if deadline.expired() {
            return false;
        }
        for i in 0..n {
            let via_ik = values[i * n + k];
            // The diagonal stays zero: cells (i, i) are skipped by
            // splitting the row at j == i.
            match problem {
                ProblemSense::Minimax => {
                    for j in (0..i).chain(i + 1..n) {
                        let through = via_ik.max(values[k * n + j]);
                        if through < values[i * n + j] {
                            values[i * n + j] = through;
                        }
                    }
                }
                ProblemSense::Widest => {
                    for j in (0..i).chain(i + 1..n) {
                        let through = via_ik.min(values[k * n + j]);
                        if through > values[i * n + j] {
                            values[i * n + j] = through;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Spanning-tree baseline: build the tree once, root it, and for every
/// pair report the extreme edge weight on the unique tree path, found by
/// walking both endpoints up to their lowest common ancestor.
pub fn appd_mst_path(graph: &DenseGraph, problem: ProblemSense) -> DistanceMatrix {
    appd_mst_path_within(graph, problem, &Deadline::none()).expect("no deadline to expire")
}

/// Deadline-aware variant of [`appd_mst_path`], polled once per source
/// vertex.
pub fn appd_mst_path_within(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
) -> Option<DistanceMatrix> {
    let n = graph.len();
    let mut values = vec![0.0; n * n];
    if appd_mst_path_within_into(graph, problem, deadline, &mut values) {
        Some(DistanceMatrix::from_values(n, values, problem))
    } else {
        None
    }
}

/// Allocation-free form of [`appd_mst_path_within`]: fills a caller-owned
/// `n * n` buffer (previous contents do not matter).
pub fn appd_mst_path_within_into(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
    values: &mut [f64],
) -> bool {
    let n = graph.len();
    assert_eq!(values.len(), n * n, "output buffer has wrong length");
    let sense = match problem {
        ProblemSense::Minimax => TreeSense::Minimum,
        ProblemSense::Widest => TreeSense::Maximum,
    };
    let tree = match prim_spanning_tree_within(graph, sense, deadline) {
        Some(tree) => tree,
        None => return false,
    };

    // Root the tree at 0: parent, depth, and weight of the edge to the
    // parent, via an explicit-stack traversal.
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut up_weight = vec![0.0f64; n];
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &ei in tree.incident(v) {
            let edge = tree.edges()[ei];
            let w = edge.other(v);
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                depth[w] = depth[v] + 1;
                up_weight[w] = edge.weight;
                stack.push(w);
            }
        }
    }

    let fold = |acc: f64, w: f64| match problem {
        ProblemSense::Minimax => acc.max(w),
        ProblemSense::Widest => acc.min(w),
    };
    let neutral = match problem {
        ProblemSense::Minimax => f64::NEG_INFINITY,
        ProblemSense::Widest => f64::INFINITY,
    };

    for i in 0..n {
        if deadline.expired() {
            return false;
        }
        values[i * n + i] = 0.0;
        for j in i + 1..n {
            let (mut a, mut b) = (i, j);
            let mut extreme = neutral;
            while depth[a] > depth[b] {
                extreme = fold(extreme, up_weight[a]);
                a = parent[a];
            }
            while depth[b] > depth[a] {
                extreme = fold(extreme, up_weight[b]);
                b = parent[b];
            }
            while a != b {
                extreme = fold(extreme, up_weight[a]);
                extreme = fold(extreme, up_weight[b]);
                a = parent[a];
                b = parent[b];
            }
            values[i * n + j] = extreme;
            values[j * n + i] = extreme;
        }
    }
    true
}

/// Every simple path between one vertex pair, with the per-path extreme
/// weights and their aggregate: the distance definition, materialized.
#[derive(Clone, Debug)]
pub struct PathEnumeration {
    pub source: usize,
    pub target: usize,
    /// Each simple path as its vertex sequence, source first.
    pub paths: Vec<Vec<usize>>,
    /// Per-path extreme: the maximum edge weight (minimax) or minimum
    /// (widest), parallel to `paths`.
    pub extremes: Vec<f64>,
    /// Minimum of the extremes (minimax) or maximum (widest).
    pub aggregate: f64,
}

/// Enumerates all simple paths between `source` and `target` by
/// depth-first extension. Refuses graphs larger than
/// [`BRUTE_FORCE_MAX_VERTICES`].
pub fn enumerate_paths(
    graph: &DenseGraph,
    source: usize,
    target: usize,
    problem: ProblemSense,
) -> Result<PathEnumeration> {
    let n = graph.len();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    assert!(source < n && target < n && source != target);

    struct Search<'a> {
        graph: &'a DenseGraph,
        target: usize,
        problem: ProblemSense,
        trail: Vec<usize>,
        visited: Vec<bool>,
        paths: Vec<Vec<usize>>,
        extremes: Vec<f64>,
    }

    impl Search<'_> {
        fn extend(&mut self, running: f64) {
            let here = *self.trail.last().expect("trail never empty");
            for next in 0..self.graph.len() {
                if self.visited[next] {
                    continue;
                }
                let leg = self.graph.weight(here, next);
                let extreme = match self.problem {
                    ProblemSense::Minimax => running.max(leg),
                    ProblemSense::Widest => running.min(leg),
                };
                if next == self.target {
                    let mut path = self.trail.clone();
                    path.push(self.target);
                    self.paths.push(path);
                    self.extremes.push(extreme);
                } else {
                    self.trail.push(next);
                    self.visited[next] = true;
                    self.extend(extreme);
                    self.visited[next] = false;
                    self.trail.pop();
                }
            }
        }
    }

    let mut search = Search {
        graph,
        target,
        problem,
        trail: vec![source],
        visited: {
            let mut visited = vec![false; n];
            visited[source] = true;
            visited
        },
        paths: Vec::new(),
        extremes: Vec::new(),
    };
    let neutral = match problem {
        ProblemSense::Minimax => f64::NEG_INFINITY,
        ProblemSense::Widest => f64::INFINITY,
    };
    search.extend(neutral);

    let aggregate = match problem {
        ProblemSense::Minimax => search
            .extremes
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min),
        ProblemSense::Widest => search
            .extremes
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max),
    };
    Ok(PathEnumeration {
        source,
        target,
        paths: search.paths,
        extremes: search.extremes,
        aggregate,
    })
}

/// The APPD definition transcribed directly: enumerate every simple path
/// per pair, collect the per-path extremes, and aggregate. Usable only up
/// to [`BRUTE_FORCE_MAX_VERTICES`] vertices.
pub fn brute_force_appd(graph: &DenseGraph, problem: ProblemSense) -> Result<DistanceMatrix> {
    let n = graph.len();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let enumeration = enumerate_paths(graph, i, j, problem)?;
            values[i * n + j] = enumeration.aggregate;
            values[j * n + i] = enumeration.aggregate;
        }
    }
    Ok(DistanceMatrix::from_values(n, values, problem))
}
