//! The `O(n^2)` calculate-and-copy APPD solver.
//!
//! Build a spanning tree (minimum sense for minimax, maximum for widest),
//! then delete its edges one by one from the extreme weight down
//! (descending for minimax, ascending for widest). Each deletion splits
//! one live component in two, and the deleted edge's weight is exactly
//! the path distance between every pair of vertices the split separates,
//! so the weight is copied into those cells verbatim.
//!
//! The nested loops look cubic, but every off-diagonal cell is written
//! exactly once across the whole run — early removals split large
//! components, late removals split singletons — so the fill performs
//! `n(n-1)/2` pair writes and the component traversals sum to `O(n^2)`.

use std::thread;

use crate::deadline::Deadline;
use crate::graph::{DenseGraph, DistanceMatrix, ProblemSense};
use crate::mst::{prim_spanning_tree_within, SpanningTree, TreeSense};

/// Counters exposed by [`appd_algo4_instrumented`].
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq)]
pub struct FillStats {
    /// Unordered vertex pairs assigned a distance. Always `n(n-1)/2`.
    pub pair_writes: u64,
    /// Vertices visited across all component traversals. At most `n^2`.
    pub nodes_visited: u64,
}

fn tree_sense_for(problem: ProblemSense) -> TreeSense {
    match problem {
        ProblemSense::Minimax => TreeSense::Minimum,
        ProblemSense::Widest => TreeSense::Maximum,
    }
}

/// Edge indices in removal order: weight descending for minimax,
/// ascending for widest, equal weights by ascending insertion index.
fn removal_order(tree: &SpanningTree, problem: ProblemSense) -> Vec<usize> {
    let edges = tree.edges();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    match problem {
        ProblemSense::Minimax => order.sort_by(|&a, &b| {
            edges[b]
                .weight
                .partial_cmp(&edges[a].weight)
                .expect("tree weights are finite")
                .then(edges[a].seq.cmp(&edges[b].seq))
        }),
        ProblemSense::Widest => order.sort_by(|&a, &b| {
            edges[a]
                .weight
                .partial_cmp(&edges[b].weight)
                .expect("tree weights are finite")
                .then(edges[a].seq.cmp(&edges[b].seq))
        }),
    }
    order
}

/// The live remainder of a spanning tree while edges are removed.
///
/// Starts as the full tree adjacency; each removal deletes one edge from
/// both endpoint lists, so after `k` removals the forest has exactly
/// `k + 1` components.
struct Forest {
    adjacency: Vec<Vec<(usize, usize)>>, // (neighbor, edge index)
    removed: usize,
}

impl Forest {
    fn new(tree: &SpanningTree) -> Self {
        let mut adjacency = vec![Vec::new(); tree.len()];
        for (idx, e) in tree.edges().iter().enumerate() {
            adjacency[e.u].push((e.v, idx));
            adjacency[e.v].push((e.u, idx));
        }
        Forest {
            adjacency,
            removed: 0,
        }
    }

    /// Deletes edge `idx` between `u` and `v` in O(degree).
    fn remove(&mut self, u: usize, v: usize, idx: usize) {
        let pos = self.adjacency[u]
            .iter()
            .position(|&(_, e)| e == idx)
            .expect("edge still live at u");
        self.adjacency[u].swap_remove(pos);
        let pos = self.adjacency[v]
            .iter()
            .position(|&(_, e)| e == idx)
            .expect("edge still live at v");
        self.adjacency[v].swap_remove(pos);
        self.removed += 1;
    }

    /// Collects the component containing `start` by iterative depth-first
    /// search with an explicit stack; path-shaped trees at n = 10^4+ would
    /// overflow the call stack otherwise. `stamp`/`epoch` stand in for a
    /// visited bitmap that would need clearing between calls.
    fn collect_component(
        &self,
        start: usize,
        stamp: &mut [u64],
        epoch: u64,
        out: &mut Vec<usize>,
        stack: &mut Vec<usize>,
    ) {
        out.clear();
        stack.clear();
        stamp[start] = epoch;
        stack.push(start);
        while let Some(v) = stack.pop() {
            out.push(v);
            for &(w, _) in &self.adjacency[v] {
                if stamp[w] != epoch {
                    stamp[w] = epoch;
                    stack.push(w);
                }
            }
        }
    }
}

/// Scratch buffers reused across removals.
struct Scratch {
    stamp: Vec<u64>,
    epoch: u64,
    side_u: Vec<usize>,
    side_v: Vec<usize>,
    stack: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            stamp: vec![0; n],
            epoch: 0,
            side_u: Vec::new(),
            side_v: Vec::new(),
            stack: Vec::new(),
        }
    }

    /// Splits off the two components around the just-removed edge.
    ///
    /// Large components are re-emitted in ascending vertex order by one
    /// sweep over the stamps: the fill then writes runs of nearby cells
    /// instead of pulling a cold cache line per store. The sweep is O(n)
    /// and only runs when the split covers at least n/8 vertices, so the
    /// total stays O(n^2).
    fn split(&mut self, forest: &Forest, u: usize, v: usize) {
        self.epoch += 1;
        let epoch_u = self.epoch;
        forest.collect_component(
            u,
            &mut self.stamp,
            epoch_u,
            &mut self.side_u,
            &mut self.stack,
        );
        self.epoch += 1;
        let epoch_v = self.epoch;
        forest.collect_component(
            v,
            &mut self.stamp,
            epoch_v,
            &mut self.side_v,
            &mut self.stack,
        );

        let n = self.stamp.len();
        if (self.side_u.len() + self.side_v.len()) * 8 >= n {
            self.side_u.clear();
            self.side_v.clear();
            for vertex in 0..n {
                let stamp = self.stamp[vertex];
                if stamp == epoch_u {
                    self.side_u.push(vertex);
                } else if stamp == epoch_v {
                    self.side_v.push(vertex);
                }
            }
        }
    }
}

fn calc_copy_into(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
    values: &mut [f64],
) -> Option<FillStats> {
    let n = graph.len();
    assert_eq!(values.len(), n * n, "output buffer has wrong length");
    let tree = prim_spanning_tree_within(graph, tree_sense_for(problem), deadline)?;
    let order = removal_order(&tree, problem);

    // The fill writes every off-diagonal cell; the diagonal is ours to
    // clear, so a dirty buffer is fine.
    for i in 0..n {
        values[i * n + i] = 0.0;
    }
    let mut forest = Forest::new(&tree);
    let mut scratch = Scratch::new(n);
    let mut stats = FillStats::default();

    for &idx in &order {
        if deadline.expired() {
            return None;
        }
        let edge = tree.edges()[idx];
        forest.remove(edge.u, edge.v, idx);
        scratch.split(&forest, edge.u, edge.v);

        stats.nodes_visited += (scratch.side_u.len() + scratch.side_v.len()) as u64;
        stats.pair_writes += (scratch.side_u.len() * scratch.side_v.len()) as u64;
        // Both triangles are filled row by row; jumping rows in the inner
        // loop stalls on page walks once the matrix outgrows the TLB.
        for &a in &scratch.side_u {
            let row = a * n;
            for &b in &scratch.side_v {
                values[row + b] = edge.weight;
            }
        }
        for &b in &scratch.side_v {
            let row = b * n;
            for &a in &scratch.side_u {
                values[row + a] = edge.weight;
            }
        }
    }
    debug_assert_eq!(forest.removed, n.saturating_sub(1));

    Some(stats)
}

/// Computes the APPD matrix in `O(n^2)` by calculate-and-copy.
pub fn appd_algo4(graph: &DenseGraph, problem: ProblemSense) -> DistanceMatrix {
    let (matrix, _) = appd_algo4_instrumented(graph, problem);
    matrix
}

/// Deadline-aware variant of [`appd_algo4`]; returns `None` on expiry.
/// Polled once per Prim step and once per edge removal.
pub fn appd_algo4_within(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
) -> Option<DistanceMatrix> {
    let n = graph.len();
    let mut values = vec![0.0; n * n];
    calc_copy_into(graph, problem, deadline, &mut values)?;
    Some(DistanceMatrix::from_values(n, values, problem))
}

/// Allocation-free form of [`appd_algo4_within`]: fills a caller-owned
/// `n * n` buffer (previous contents do not matter) and reports whether
/// the run completed. Lets callers that time the solver keep buffer
/// setup out of the measured window.
pub fn appd_algo4_within_into(
    graph: &DenseGraph,
    problem: ProblemSense,
    deadline: &Deadline,
    values: &mut [f64],
) -> bool {
    calc_copy_into(graph, problem, deadline, values).is_some()
}

/// [`appd_algo4`] plus fill counters, for verifying the write-once and
/// traversal-cost bounds.
pub fn appd_algo4_instrumented(
    graph: &DenseGraph,
    problem: ProblemSense,
) -> (DistanceMatrix, FillStats) {
    let n = graph.len();
    let mut values = vec![0.0; n * n];
    let stats = calc_copy_into(graph, problem, &Deadline::none(), &mut values)
        .expect("no deadline to expire");
    (DistanceMatrix::from_values(n, values, problem), stats)
}

/// Matrix cells shared across fill workers. Workers write disjoint cell
/// sets, so no synchronization is needed.
struct RawCells(*mut f64);

unsafe impl Send for RawCells {}
unsafe impl Sync for RawCells {}

/// Parallel variant of [`appd_algo4`] using all available cores.
///
/// Output is bit-identical to the sequential run: the same tree and
/// removal order are used, and each cell still has exactly one writer.
pub fn appd_algo4_parallel(graph: &DenseGraph, problem: ProblemSense) -> DistanceMatrix {
    let workers = thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1);
    appd_algo4_parallel_with(graph, problem, workers)
}

/// Parallel fill with an explicit worker count.
///
/// The sorted removal list is split into contiguous chunks, one per
/// worker. Each worker replays the removals before its chunk on a private
/// forest copy (no traversal), then processes its own removals normally.
pub fn appd_algo4_parallel_with(
    graph: &DenseGraph,
    problem: ProblemSense,
    workers: usize,
) -> DistanceMatrix {
    let n = graph.len();
    let tree = prim_spanning_tree_within(graph, tree_sense_for(problem), &Deadline::none())
        .expect("no deadline to expire");
    let order = removal_order(&tree, problem);
    let workers = workers.max(1).min(order.len().max(1));

    let mut values = vec![0.0; n * n];
    if workers <= 1 {
        let mut forest = Forest::new(&tree);
        let mut scratch = Scratch::new(n);
        for &idx in &order {
            let edge = tree.edges()[idx];
            forest.remove(edge.u, edge.v, idx);
            scratch.split(&forest, edge.u, edge.v);
            for &a in &scratch.side_u {
                let row = a * n;
                for &b in &scratch.side_v {
                    values[row + b] = edge.weight;
                }
            }
            for &b in &scratch.side_v {
                let row = b * n;
                for &a in &scratch.side_u {
                    values[row + a] = edge.weight;
                }
            }
        }
        return DistanceMatrix::from_values(n, values, problem);
    }

    let chunk = order.len().div_ceil(workers);
    let cells = RawCells(values.as_mut_ptr());
    let cells = &cells;
    let tree = &tree;
    let order = &order[..];

    thread::scope(|scope| {
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(order.len());
            if lo >= hi {
                break;
            }
            scope.spawn(move || {
                let mut forest = Forest::new(tree);
                for &idx in &order[..lo] {
                    let edge = tree.edges()[idx];
                    forest.remove(edge.u, edge.v, idx);
                }
                let mut scratch = Scratch::new(n);
                for &idx in &order[lo..hi] {
                    let edge = tree.edges()[idx];
                    forest.remove(edge.u, edge.v, idx);
                    scratch.split(&forest, edge.u, edge.v);
                    // SAFETY: each unordered pair is separated by exactly
                    // one removal, and removals are partitioned across
                    // workers, so no cell has two writers; the buffer
                    // outlives the scope.
                    for &a in &scratch.side_u {
                        let row = a * n;
                        for &b in &scratch.side_v {
                            unsafe { *cells.0.add(row + b) = edge.weight }
                        }
                    }
                    for &b in &scratch.side_v {
                        let row = b * n;
                        for &a in &scratch.side_u {
                            unsafe { *cells.0.add(row + a) = edge.weight }
                        }
                    }
                }
            });
        }
    });

    DistanceMatrix::from_values(n, values, problem)
}
