//! All points path distance (APPD) matrices for undirected dense graphs.
//!
//! Given a complete graph with `n` vertices, the minimax path problem asks
//! for a path between two vertices that minimizes the largest edge weight
//! along it; the widest path problem is the dual and maximizes the smallest
//! edge weight. The APPD matrix collects that optimum for every vertex pair.
//!
//! The crate ships one `O(n^2)` solver and two `O(n^3)`-class references
//! that all produce bit-identical matrices:
//!
//! * [`appd_algo4`] — the calculate-and-copy solver: builds a spanning
//!   tree, removes its edges from the extreme weight down, and copies each
//!   removed weight into every vertex pair that removal separates. Each
//!   matrix cell is written exactly once, so the fill is `O(n^2)`.
//! * [`appd_floyd`] — a Floyd-Warshall relaxation with the additive update
//!   replaced by min/max selection.
//! * [`appd_mst_path`] — builds the same spanning tree and reports the
//!   extreme edge weight on the unique tree path of every pair.
//!
//! [`brute_force_appd`] enumerates all simple paths (capped at `n <= 8`) and
//! serves as the definitional oracle. The [`mod@bench`] module times the solvers
//! on seeded synthetic point sets and fits log-log scaling exponents.
//!
//! Distances are never arithmetic combinations of weights: every off-diagonal
//! output value is a copy of some input edge weight, which is why equality
//! between solvers is exact rather than approximate.

use std::error;
use std::fmt;
use std::io;
use std::path::PathBuf;
use std::result;

pub mod algo4;
pub mod baselines;
pub mod bench;
pub mod csv;
pub mod deadline;
pub mod graph;
pub mod mst;

pub use crate::algo4::{
    appd_algo4, appd_algo4_instrumented, appd_algo4_parallel, appd_algo4_parallel_with, FillStats,
};
pub use crate::baselines::{appd_floyd, appd_mst_path, brute_force_appd, PathEnumeration};
pub use crate::bench::Algorithm;
pub use crate::deadline::Deadline;
pub use crate::graph::{
    complete_graph_from_points, DenseGraph, DistanceMatrix, Euclidean, Metric, PointSet,
    ProblemSense,
};
pub use crate::mst::{prim_spanning_tree, SpanningTree, TreeEdge, TreeSense};

/// A type alias for `Result<T, Error>`.
pub type Result<T> = result::Result<T, Error>;

/// Errors raised while ingesting data or configuring a run.
///
/// Solver routines themselves are infallible on a valid graph; everything
/// that can go wrong is rejected at construction time.
#[derive(Debug)]
pub enum Error {
    /// An I/O failure while reading or writing a file.
    Io { path: PathBuf, source: io::Error },
    /// A malformed CSV cell or ragged row. `line` is 1-based.
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    /// A point coordinate that is NaN or infinite, by 0-based row/column.
    NonFiniteCoordinate { row: usize, col: usize },
    /// An edge weight that is NaN or infinite, by 0-based matrix cell.
    NonFiniteWeight { row: usize, col: usize },
    /// `weights[row][col] != weights[col][row]`; carries both values.
    Asymmetric {
        row: usize,
        col: usize,
        lower: f64,
        upper: f64,
    },
    /// A nonzero entry on the weight matrix diagonal.
    NonzeroDiagonal { index: usize, value: f64 },
    /// A weight matrix with `rows != cols`.
    NotSquare { rows: usize, cols: usize },
    /// An input that describes zero vertices or zero dimensions.
    Empty,
    /// Exhaustive path enumeration refused above its vertex cap.
    TooManyVertices { n: usize, limit: usize },
    /// Not enough completed benchmark rows to fit a scaling exponent.
    InsufficientRows { have: usize, need: usize },
    /// A benchmark configuration that violates its invariants.
    InvalidConfig(String),
    /// An unrecognized name for an algorithm, problem sense, or format.
    UnknownName { kind: &'static str, name: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Io { path, source } => {
                write!(f, "{}: {}", path.display(), source)
            }
            Error::Parse {
                path,
                line,
                message,
            } => {
                write!(f, "{}:{}: {}", path.display(), line, message)
            }
            Error::NonFiniteCoordinate { row, col } => {
                write!(
                    f,
                    "non-finite coordinate at point {}, dimension {}",
                    row, col
                )
            }
            Error::NonFiniteWeight { row, col } => {
                write!(f, "non-finite edge weight at ({}, {})", row, col)
            }
            Error::Asymmetric {
                row,
                col,
                lower,
                upper,
            } => {
                write!(
                    f,
                    "asymmetric weights at ({}, {}): {} forward vs {} backward",
                    row, col, lower, upper
                )
            }
            Error::NonzeroDiagonal { index, value } => {
                write!(f, "nonzero diagonal at ({}, {}): {}", index, index, value)
            }
            Error::NotSquare { rows, cols } => {
                write!(
                    f,
                    "weight matrix is not square: {} rows but {} columns",
                    rows, cols
                )
            }
            Error::Empty => write!(f, "input describes no vertices"),
            Error::TooManyVertices { n, limit } => {
                write!(
                    f,
                    "exhaustive path enumeration supports at most {} vertices, got {}",
                    limit, n
                )
            }
            Error::InsufficientRows { have, need } => {
                write!(
                    f,
                    "scaling fit needs at least {} completed rows, have {}",
                    need, have
                )
            }
            Error::InvalidConfig(msg) => write!(f, "invalid benchmark config: {}", msg),
            Error::UnknownName { kind, name } => {
                write!(f, "unrecognized {}: '{}'", kind, name)
            }
        }
    }
}

impl error::Error for Error {
    fn source(&self) -> Option<&(dyn error::Error + 'static)> {
        match self {
            Error::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}
