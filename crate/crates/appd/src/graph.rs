//! Graph and matrix data model: point sets, dense weight matrices, and the
//! APPD output matrix.
//!
//! All types are immutable after construction and enforce their invariants
//! at the constructor, so the solvers never have to re-validate.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Which optimum a path distance represents.
#[derive(Clone, Copy, Debug, Eq, PartialEq, Hash)]
pub enum ProblemSense {
    /// Minimize the maximum edge weight along a path.
    Minimax,
    /// Maximize the minimum edge weight along a path.
    Widest,
}

impl ProblemSense {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemSense::Minimax => "minimax",
            ProblemSense::Widest => "widest",
        }
    }
}

impl fmt::Display for ProblemSense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemSense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minimax" => Ok(ProblemSense::Minimax),
            "widest" => Ok(ProblemSense::Widest),
            other => Err(Error::UnknownName {
                kind: "problem sense",
                name: other.to_string(),
            }),
        }
    }
}

/// `n` points in `d`-dimensional space, stored row-major.
///
/// Every coordinate is finite; `n >= 1` and `d >= 1`.
#[derive(Clone, Debug)]
pub struct PointSet {
    n: usize,
    d: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from a flat row-major coordinate buffer.
    ///
    /// Rejects empty shapes and non-finite coordinates, naming the 0-based
    /// point and dimension of the first offender.
    pub fn new(n: usize, d: usize, coords: Vec<f64>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Empty);
        }
        assert_eq!(coords.len(), n * d, "coordinate buffer has wrong length");
        for (idx, &c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteCoordinate {
                    row: idx / d,
                    col: idx % d,
                });
            }
        }
        Ok(PointSet { n, d, coords })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// The coordinates of point `i`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    /// The flat row-major coordinate buffer.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// A distance function over coordinate slices of equal dimension.
///
/// The conversion to a complete graph is pluggable over this trait;
/// [`Euclidean`] is the built-in metric.
pub trait Metric {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64;
}

/// Straight-line distance: the square root of the summed squared
/// coordinate differences.
#[derive(Clone, Copy, Debug, Default)]
pub struct Euclidean;

impl Metric for Euclidean {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut sum = 0.0;
        for (x, y) in a.iter().zip(b.iter()) {
            let delta = x - y;
            sum += delta * delta;
        }
        sum.sqrt()
    }
}

/// Replaces `-0.0` with `+0.0` so that equal weights are always
/// bit-identical. Output values are copies of input weights, and the
/// equivalence checks between solvers compare raw bits.
fn canonical(w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        w
    }
}

/// An undirected complete graph on `n >= 1` vertices, stored as a full
/// row-major `n x n` weight matrix.
///
/// Invariants, enforced at construction:
///
/// * `weights[i][j] == weights[j][i]` bit-exactly,
/// * `weights[i][i] == 0`,
/// * every entry is finite (negative weights are allowed).
#[derive(Clone, Debug)]
pub struct DenseGraph {
    n: usize,
    weights: Vec<f64>,
}

impl DenseGraph {
    /// Validates a flat row-major weight matrix and wraps it.
    ///
    /// Asymmetry is detected on the exact values: any `|w_ij - w_ji| > 0`
    /// is rejected with the offending cell rather than silently averaged.
    pub fn from_weights(n: usize, mut weights: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        assert_eq!(weights.len(), n * n, "weight buffer has wrong length");
        for w in weights.iter_mut() {
            *w = canonical(*w);
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[i * n + j];
                if !w.is_finite() {
                    return Err(Error::NonFiniteWeight { row: i, col: j });
                }
            }
            let diag = weights[i * n + i];
            if diag != 0.0 {
                return Err(Error::NonzeroDiagonal {
                    index: i,
                    value: diag,
                });
            }
            for j in i + 1..n {
                let lower = weights[i * n + j];
                let upper = weights[j * n + i];
                if lower != upper {
                    return Err(Error::Asymmetric {
                        row: i,
                        col: j,
                        lower,
                        upper,
                    });
                }
            }
        }
        Ok(DenseGraph { n, weights })
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    /// The weight of edge `(i, j)`. Zero when `i == j`.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    /// Row `i` of the weight matrix.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// The full row-major weight matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The graph with every weight negated (zeros stay `+0.0`).
    pub fn negated(&self) -> DenseGraph {
        let weights = self.weights.iter().map(|&w| canonical(-w)).collect();
        DenseGraph { n: self.n, weights }
    }

    /// Relabels vertices: `perm[i]` is the new label of vertex `i`.
    ///
    /// `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> DenseGraph {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                weights[perm[i] * n + perm[j]] = self.weights[i * n + j];
            }
        }
        DenseGraph { n, weights }
    }
}

/// Converts a point set into the complete graph of pairwise [`Euclidean`]
/// distances.
///
/// Fails only if a computed distance overflows to infinity, which needs
/// coordinates on the order of `1e154`.
pub fn complete_graph_from_points(points: &PointSet) -> Result<DenseGraph> {
    complete_graph_with_metric(points, &Euclidean)
}

/// Converts a point set into a complete graph under a caller-supplied
/// metric. Each unordered pair is evaluated once and mirrored, so the
/// result is symmetric even for a sloppy metric.
pub fn complete_graph_with_metric<M: Metric>(points: &PointSet, metric: &M) -> Result<DenseGraph> {
    let n = points.len();
    let mut weights = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let w = canonical(metric.distance(points.point(i), points.point(j)));
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { row: i, col: j });
            }
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
    }
    Ok(DenseGraph { n, weights })
}

/// The `n x n` all points path distance matrix for one problem sense.
///
/// Symmetric with a zero diagonal; every off-diagonal value is a copy of
/// some edge weight of the source graph.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
    sense: ProblemSense,
}

impl DistanceMatrix {
    /// Wraps a row-major value buffer. The caller is responsible for the
    /// type's invariants; solver outputs always satisfy them.
    pub fn from_values(n: usize, values: Vec<f64>, sense: ProblemSense) -> Self {
        assert_eq!(values.len(), n * n, "value buffer has wrong length");
        DistanceMatrix { n, values, sense }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1: produced only from non-empty graphs
    }

    pub fn sense(&self) -> ProblemSense {
        self.sense
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// The full row-major value buffer.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Bit-exact equality of shape, sense, and every cell.
    pub fn bitwise_eq(&self, other: &DistanceMatrix) -> bool {
        self.n == other.n
            && self.sense == other.sense
            && self
                .values
                .iter()
                .zip(other.values.iter())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// The first cell (row-major) where the two matrices differ in bits,
    /// or `None` when they are identical. Shapes must match.
    pub fn first_difference(&self, other: &DistanceMatrix) -> Option<(usize, usize)> {
        assert_eq!(self.n, other.n, "matrix shapes differ");
        self.values
            .iter()
            .zip(other.values.iter())
            .position(|(a, b)| a.to_bits() != b.to_bits())
            .map(|idx| (idx / self.n, idx % self.n))
    }

    /// Checks the structural invariants: bitwise symmetry and a zero
    /// diagonal.
    pub fn is_symmetric_with_zero_diagonal(&self) -> bool {
        for i in 0..self.n {
            if self.values[i * self.n + i].to_bits() != 0.0f64.to_bits() {
                return false;
            }
            for j in i + 1..self.n {
                if self.values[i * self.n + j].to_bits() != self.values[j * self.n + i].to_bits() {
                    return false;
                }
            }
        }
        true
    }

    /// Relabels vertices: `perm[i]` is the new label of vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> DistanceMatrix {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[perm[i] * n + perm[j]] = self.values[i * n + j];
            }
        }
        DistanceMatrix {
            n,
            values,
            sense: self.sense,
        }
    }

    /// Element-wise negation, flipping the sense. `0.0` stays `+0.0`.
    pub fn negated(&self) -> DistanceMatrix {
        let values = self
            .values
            .iter()
            .map(|&v| if v == 0.0 { 0.0 } else { -v })
            .collect();
        let sense = match self.sense {
            ProblemSense::Minimax => ProblemSense::Widest,
            ProblemSense::Widest => ProblemSense::Minimax,
        };
        DistanceMatrix {
            n: self.n,
            values,
            sense,
        }
    }
}
