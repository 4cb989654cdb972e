//! CSV ingestion and output.
//!
//! Two input formats, both headerless UTF-8 with `.` decimal separators:
//!
//! * points-csv — one point per row, `d` numeric columns;
//! * matrix-csv — `n` rows of `n` numeric columns, a full weight matrix.
//!
//! The matrix writer prints each value in its shortest decimal form that
//! parses back to the identical 64-bit float, so a write/read round trip
//! is bit-exact.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::graph::{complete_graph_from_points, DenseGraph, DistanceMatrix, PointSet};
use crate::mst::SpanningTree;
use crate::{Error, Result};

/// How an input file is interpreted.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum InputFormat {
    /// points-csv: rows of coordinates, converted to a complete graph.
    Points,
    /// matrix-csv: an explicit symmetric weight matrix.
    Matrix,
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Points => "points",
            InputFormat::Matrix => "matrix",
        })
    }
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "points" | "points-csv" => Ok(InputFormat::Points),
            "matrix" | "matrix-csv" => Ok(InputFormat::Matrix),
            other => Err(Error::UnknownName {
                kind: "input format",
                name: other.to_string(),
            }),
        }
    }
}

/// Loads a graph from `path`, routing points-csv through the complete-graph
/// conversion and matrix-csv through full invariant validation.
pub fn load_graph(path: &Path, format: InputFormat) -> Result<DenseGraph> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let result = match format {
        InputFormat::Points => parse_points_csv(&text).and_then(|p| complete_graph_from_points(&p)),
        InputFormat::Matrix => parse_matrix_csv(&text),
    };
    result.map_err(|e| label_path(e, path))
}

/// Loads a point set from a points-csv file.
pub fn load_points(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_points_csv(&text).map_err(|e| label_path(e, path))
}

fn label_path(err: Error, path: &Path) -> Error {
    match err {
        Error::Parse { line, message, .. } => Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        },
        other => other,
    }
}

fn parse_error(line: usize, message: String) -> Error {
    Error::Parse {
        path: PathBuf::from("<input>"),
        line,
        message,
    }
}

fn parse_rows(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            return Err(parse_error(lineno, "empty row".to_string()));
        }
        let mut row = Vec::new();
        for cell in line.split(',') {
            let cell = cell.trim();
            let value: f64 = cell
                .parse()
                .map_err(|_| parse_error(lineno, format!("cannot parse '{}' as a number", cell)))?;
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_error(
                    lineno,
                    format!(
                        "ragged row: {} columns, expected {}",
                        row.len(),
                        first.len()
                    ),
                ));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Parses points-csv text into a validated [`PointSet`].
pub fn parse_points_csv(text: &str) -> Result<PointSet> {
    let rows = parse_rows(text)?;
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    let d = rows[0].len();
    let n = rows.len();
    let mut coords = Vec::with_capacity(n * d);
    for row in &rows {
        coords.extend_from_slice(row);
    }
    PointSet::new(n, d, coords)
}

/// Parses matrix-csv text into a validated [`DenseGraph`].
pub fn parse_matrix_csv(text: &str) -> Result<DenseGraph> {
    let rows = parse_rows(text)?;
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    let n = rows.len();
    if rows[0].len() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: rows[0].len(),
        });
    }
    let mut weights = Vec::with_capacity(n * n);
    for row in &rows {
        weights.extend_from_slice(row);
    }
    DenseGraph::from_weights(n, weights)
}

/// Writes a distance matrix as matrix-csv. Each value uses the shortest
/// decimal representation that parses back to the identical bits.
pub fn write_matrix_csv<W: Write>(matrix: &DistanceMatrix, out: &mut W) -> io::Result<()> {
    write_square(matrix.len(), matrix.values(), out)
}

/// Writes a graph's weight matrix as matrix-csv.
pub fn write_graph_csv<W: Write>(graph: &DenseGraph, out: &mut W) -> io::Result<()> {
    write_square(graph.len(), graph.weights(), out)
}

fn write_square<W: Write>(n: usize, values: &[f64], out: &mut W) -> io::Result<()> {
    let mut line = String::new();
    for i in 0..n {
        line.clear();
        for j in 0..n {
            if j > 0 {
                line.push(',');
            }
            // f64 Display is the shortest round-trip representation.
            line.push_str(&format!("{}", values[i * n + j]));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Dumps a spanning tree as `u,v,weight` rows, one edge per line, in
/// insertion order. Debug aid for the CLI.
pub fn write_tree_csv<W: Write>(tree: &SpanningTree, out: &mut W) -> io::Result<()> {
    for edge in tree.edges() {
        writeln!(out, "{},{},{}", edge.u, edge.v, edge.weight)?;
    }
    Ok(())
}
