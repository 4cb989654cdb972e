//! Benchmark harness: seeded synthetic datasets, per-algorithm wall-clock
//! timing with a cooperative timeout, CSV reporting, and log-log scaling
//! exponent fits.
//!
//! Datasets are generated from a fully specified splitmix64 stream so that
//! every timing row is reproducible from `(n, d, seed)` alone. Only the
//! distance computation is timed; dataset generation and graph
//! construction are excluded.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::algo4::{appd_algo4_within, appd_algo4_within_into};
use crate::baselines::{
    appd_floyd_within, appd_floyd_within_into, appd_mst_path_within, appd_mst_path_within_into,
};
use crate::deadline::Deadline;
use crate::graph::{
    complete_graph_from_points, DenseGraph, DistanceMatrix, PointSet, ProblemSense,
};
use crate::{Error, Result};

/// splitmix64: one 64-bit multiply-xorshift stage per output.
///
/// Chosen for the dataset stream because it is a few lines in any
/// language, which keeps the seeded benchmarks reproducible outside this
/// crate.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`: the top 53 bits scaled by 2^-53.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Deterministic point cloud: `n` points, `d` coordinates each, drawn
/// row-major from a splitmix64 stream seeded with `seed`, uniform in
/// `[0, 1)`.
pub fn generate_random_points(n: usize, d: usize, seed: u64) -> PointSet {
    assert!(n >= 1 && d >= 1, "point sets are non-empty");
    let mut rng = SplitMix64::new(seed);
    let coords: Vec<f64> = (0..n * d).map(|_| rng.next_f64()).collect();
    PointSet::new(n, d, coords).expect("generated coordinates are finite")
}

/// 64-bit FNV-1a over a byte stream.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Order-dependent checksum of a distance matrix: FNV-1a over the
/// little-endian bytes of the row-major values. Bit-identical matrices and
/// only those agree.
pub fn matrix_checksum(matrix: &DistanceMatrix) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for value in matrix.values() {
        for b in value.to_le_bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    }
    hash
}

/// The APPD solvers the harness can time.
#[derive(Clone, Copy, Debug, Eq, PartialEq, Hash)]
pub enum Algorithm {
    /// Calculate-and-copy, `O(n^2)`.
    Algo4,
    /// Floyd-Warshall variant, `O(n^3)`.
    Floyd,
    /// Spanning tree plus per-pair path walks. Reimplemented here as a
    /// rooted-tree walk, so its timing curve is not comparable to other
    /// codebases; it is benchmarked for completeness and used mainly as a
    /// correctness cross-check.
    MstPath,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Algo4, Algorithm::Floyd, Algorithm::MstPath];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Algo4 => "algo4",
            Algorithm::Floyd => "floyd",
            Algorithm::MstPath => "mst-path",
        }
    }

    /// Runs the solver to completion.
    pub fn run(&self, graph: &DenseGraph, problem: ProblemSense) -> DistanceMatrix {
        self.run_within(graph, problem, &Deadline::none())
            .expect("no deadline to expire")
    }

    /// Runs the solver under a cooperative deadline.
    pub fn run_within(
        &self,
        graph: &DenseGraph,
        problem: ProblemSense,
        deadline: &Deadline,
    ) -> Option<DistanceMatrix> {
        match self {
            Algorithm::Algo4 => appd_algo4_within(graph, problem, deadline),
            Algorithm::Floyd => appd_floyd_within(graph, problem, deadline),
            Algorithm::MstPath => appd_mst_path_within(graph, problem, deadline),
        }
    }

    /// Runs the solver into a caller-owned `n * n` buffer (previous
    /// contents do not matter), reporting whether it completed before the
    /// deadline. The harness times this form so buffer setup stays out of
    /// the measured window.
    pub fn run_within_into(
        &self,
        graph: &DenseGraph,
        problem: ProblemSense,
        deadline: &Deadline,
        values: &mut [f64],
    ) -> bool {
        match self {
            Algorithm::Algo4 => appd_algo4_within_into(graph, problem, deadline, values),
            Algorithm::Floyd => appd_floyd_within_into(graph, problem, deadline, values),
            Algorithm::MstPath => appd_mst_path_within_into(graph, problem, deadline, values),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algo4" => Ok(Algorithm::Algo4),
            "floyd" => Ok(Algorithm::Floyd),
            "mst-path" => Ok(Algorithm::MstPath),
            other => Err(Error::UnknownName {
                kind: "algorithm",
                name: other.to_string(),
            }),
        }
    }
}

/// What to benchmark: which sizes, which solvers, and under what budget.
#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Dataset sizes, strictly increasing, each at least 2.
    pub sizes: Vec<usize>,
    /// Point dimensionality.
    pub dimension: usize,
    /// Seed for the splitmix64 dataset stream.
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub problem: ProblemSense,
    /// Per-run budget; a run past it is recorded as a timeout row.
    pub timeout: Duration,
    /// Timed repetitions per (algorithm, size) cell; the minimum wall
    /// time is recorded.
    pub repetitions: usize,
}

impl Default for BenchConfig {
    /// The shipped profile: sizes growing to 10,000 points, the two
    /// headline solvers, and a two-hour budget per run.
    fn default() -> Self {
        BenchConfig {
            sizes: vec![500, 1000, 2000, 4000, 8000, 10000],
            dimension: 2,
            seed: 42,
            algorithms: vec![Algorithm::Algo4, Algorithm::Floyd],
            problem: ProblemSense::Minimax,
            timeout: Duration::from_secs(7200),
            repetitions: 1,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::InvalidConfig("no sizes given".into()));
        }
        for window in self.sizes.windows(2) {
            if window[1] <= window[0] {
                return Err(Error::InvalidConfig(format!(
                    "sizes must be strictly increasing: {} then {}",
                    window[0], window[1]
                )));
            }
        }
        if self.sizes[0] < 2 {
            return Err(Error::InvalidConfig(format!(
                "size {} is below 2",
                self.sizes[0]
            )));
        }
        if self.dimension == 0 {
            return Err(Error::InvalidConfig("dimension must be at least 1".into()));
        }
        if self.timeout <= Duration::ZERO {
            return Err(Error::InvalidConfig("timeout must be positive".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig(
                "repetitions must be at least 1".into(),
            ));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidConfig("no algorithms given".into()));
        }
        let mut seen = Vec::new();
        for alg in &self.algorithms {
            if seen.contains(alg) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate algorithm '{}'",
                    alg
                )));
            }
            seen.push(*alg);
        }
        Ok(())
    }
}

/// Result of one timed cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RowOutcome {
    Completed { wall_seconds: f64, checksum: u64 },
    TimedOut,
}

/// One (algorithm, size) measurement.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub problem: ProblemSense,
    pub n: usize,
    pub seed: u64,
    pub outcome: RowOutcome,
}

/// All measurements of one harness run.
#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    rows: Vec<BenchRow>,
}

/// A fitted power law `wall_seconds ~ n^exponent` for one algorithm.
#[derive(Clone, Copy, Debug)]
pub struct ScalingFit {
    pub algorithm: Algorithm,
    pub fit_min_n: usize,
    pub fit_max_n: usize,
    pub exponent: f64,
}

/// Times one cell: repeated deadline-bounded runs of `run`, returning the
/// minimum wall time or `None` once a repetition misses the deadline.
/// Only `run` itself is inside the timed window.
fn time_cell<F>(timeout: Duration, repetitions: usize, mut run: F) -> Option<f64>
where
    F: FnMut(&Deadline) -> bool,
{
    let mut best: Option<f64> = None;
    for _ in 0..repetitions {
        let deadline = Deadline::after(timeout);
        let started = Instant::now();
        if !run(&deadline) {
            return None;
        }
        let wall = started.elapsed().as_secs_f64();
        best = Some(best.map_or(wall, |b: f64| b.min(wall)));
    }
    best
}

/// Touches one element per page so the timed runs never pay first-touch
/// page faults. Whether the allocator hands back warm or fresh pages
/// otherwise depends on the buffer size, which would skew the scaling fit.
fn prefault(values: &mut [f64]) {
    let step = 4096 / std::mem::size_of::<f64>();
    let mut i = 0;
    while i < values.len() {
        // Volatile keeps the store from being elided on a zeroed buffer.
        unsafe { std::ptr::write_volatile(values.as_mut_ptr().add(i), 0.0) };
        i += step;
    }
}

/// Runs the configured benchmark matrix.
///
/// For each size, the dataset and graph are built once, outside the
/// timers; each algorithm is then timed on the shared graph, writing into
/// a pre-faulted output buffer. Timeouts are recorded as rows, not
/// errors.
pub fn run_benchmark(config: &BenchConfig) -> BenchReport {
    config.validate().expect("benchmark config must be valid");
    let mut rows = Vec::new();
    for &n in &config.sizes {
        let points = generate_random_points(n, config.dimension, config.seed);
        let graph = complete_graph_from_points(&points).expect("random points are finite");
        for &algorithm in &config.algorithms {
            let mut out = vec![0.0; n * n];
            prefault(&mut out);
            let timed = time_cell(config.timeout, config.repetitions, |deadline| {
                algorithm.run_within_into(&graph, config.problem, deadline, &mut out)
            });
            let outcome = match timed {
                Some(wall_seconds) => {
                    let matrix = DistanceMatrix::from_values(n, out, config.problem);
                    RowOutcome::Completed {
                        wall_seconds,
                        checksum: matrix_checksum(&matrix),
                    }
                }
                None => RowOutcome::TimedOut,
            };
            rows.push(BenchRow {
                algorithm,
                problem: config.problem,
                n,
                seed: config.seed,
                outcome,
            });
        }
    }
    BenchReport { rows }
}

impl BenchReport {
    pub fn rows(&self) -> &[BenchRow] {
        &self.rows
    }

    /// `(n, ln n, ln wall)` samples for one algorithm's completed rows.
    fn fit_samples(&self, algorithm: Algorithm) -> Vec<(usize, f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .filter_map(|r| match r.outcome {
                RowOutcome::Completed { wall_seconds, .. } if wall_seconds > 0.0 => {
                    Some((r.n, (r.n as f64).ln(), wall_seconds.ln()))
                }
                _ => None,
            })
            .collect()
    }

    /// Cells where two algorithms completed the same `n` with different
    /// output checksums. Always empty for correct solvers.
    pub fn checksum_mismatches(&self) -> Vec<(usize, Algorithm, Algorithm)> {
        let mut mismatches = Vec::new();
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i + 1..] {
                if a.n != b.n || a.problem != b.problem || a.seed != b.seed {
                    continue;
                }
                if let (
                    RowOutcome::Completed { checksum: ca, .. },
                    RowOutcome::Completed { checksum: cb, .. },
                ) = (a.outcome, b.outcome)
                {
                    if ca != cb {
                        mismatches.push((a.n, a.algorithm, b.algorithm));
                    }
                }
            }
        }
        mismatches
    }

    /// Report CSV: `algorithm,problem,n,seed,status,wall_seconds,checksum_hex`.
    /// Timeout rows leave the last two fields empty.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(
            out,
            "algorithm,problem,n,seed,status,wall_seconds,checksum_hex"
        )?;
        for row in &self.rows {
            match row.outcome {
                RowOutcome::Completed {
                    wall_seconds,
                    checksum,
                } => writeln!(
                    out,
                    "{},{},{},{},ok,{},{:016x}",
                    row.algorithm, row.problem, row.n, row.seed, wall_seconds, checksum
                )?,
                RowOutcome::TimedOut => writeln!(
                    out,
                    "{},{},{},{},timeout,,",
                    row.algorithm, row.problem, row.n, row.seed
                )?,
            }
        }
        Ok(())
    }

    /// Summary CSV: `algorithm,fit_min_n,fit_max_n,exponent`, one row per
    /// algorithm with enough completed rows to fit.
    pub fn write_summary_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "algorithm,fit_min_n,fit_max_n,exponent")?;
        for fit in self.scaling_fits() {
            writeln!(
                out,
                "{},{},{},{}",
                fit.algorithm, fit.fit_min_n, fit.fit_max_n, fit.exponent
            )?;
        }
        Ok(())
    }

    /// Fits for every algorithm in the report that has enough data,
    /// in first-appearance order.
    pub fn scaling_fits(&self) -> Vec<ScalingFit> {
        let mut algorithms = Vec::new();
        for row in &self.rows {
            if !algorithms.contains(&row.algorithm) {
                algorithms.push(row.algorithm);
            }
        }
        algorithms
            .into_iter()
            .filter_map(|alg| estimate_scaling_exponent(self, alg).ok())
            .collect()
    }
}

/// Least-squares slope of `ln(wall_seconds)` against `ln(n)` over an
/// algorithm's completed rows. Needs at least 3 points.
pub fn estimate_scaling_exponent(report: &BenchReport, algorithm: Algorithm) -> Result<ScalingFit> {
    let samples = report.fit_samples(algorithm);
    if samples.len() < 3 {
        return Err(Error::InsufficientRows {
            have: samples.len(),
            need: 3,
        });
    }
    let count = samples.len() as f64;
    let mean_x = samples.iter().map(|&(_, x, _)| x).sum::<f64>() / count;
    let mean_y = samples.iter().map(|&(_, _, y)| y).sum::<f64>() / count;
    let mut covariance = 0.0;
    let mut variance = 0.0;
    for &(_, x, y) in &samples {
        covariance += (x - mean_x) * (y - mean_y);
        variance += (x - mean_x) * (x - mean_x);
    }
    Ok(ScalingFit {
        algorithm,
        fit_min_n: samples.iter().map(|&(n, _, _)| n).min().expect("non-empty"),
        fit_max_n: samples.iter().map(|&(n, _, _)| n).max().expect("non-empty"),
        exponent: covariance / variance,
    })
}
