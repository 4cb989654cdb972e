//! Command-line front end: compute an APPD matrix, cross-verify the
//! solvers, or run the scaling benchmark.
//!
//! Diagnostics go to standard error; data goes to files or standard
//! output. Exit codes: 0 success, 1 validation or parse failure,
//! 2 verification mismatch, 3 bad usage.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use appd::bench::{run_benchmark, Algorithm, BenchConfig};
use appd::csv::{load_graph, write_graph_csv, write_matrix_csv, InputFormat};
use appd::{
    appd_algo4_parallel, brute_force_appd, complete_graph_from_points, DenseGraph, DistanceMatrix,
    ProblemSense,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "appd",
    version,
    about = "All points path distance matrices for dense graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the APPD matrix of one input file and write it as CSV.
    Compute {
        /// Input file path.
        #[arg(long)]
        input: PathBuf,
        /// Input format: 'points' (rows of coordinates) or 'matrix'
        /// (full symmetric weight matrix).
        #[arg(long)]
        format: InputFormat,
        /// Problem sense: 'minimax' or 'widest'.
        #[arg(long, default_value = "minimax")]
        problem: ProblemSense,
        /// Solver: 'algo4', 'floyd', or 'mst-path'.
        #[arg(long, default_value = "algo4")]
        algo: Algorithm,
        /// Output path; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Use the multi-threaded fill (algo4 only; output is
        /// bit-identical to the sequential run).
        #[arg(long)]
        parallel: bool,
    },
    /// Cross-check all solvers on seeded random graphs and verify the
    /// distance-matrix invariants.
    Verify {
        /// Largest graph size; sizes cycle through 2..=n-max.
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: usize,
        /// Number of seeded graphs to check.
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        /// Problem sense to verify.
        #[arg(long, default_value = "minimax")]
        problem: ProblemSense,
    },
    /// Time the solvers on growing synthetic datasets and fit scaling
    /// exponents.
    Bench {
        /// Dataset sizes, comma separated, strictly increasing.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "500,1000,2000,4000,8000,10000"
        )]
        sizes: Vec<usize>,
        /// Solvers to time, comma separated.
        #[arg(long = "algos", value_delimiter = ',', default_value = "algo4,floyd")]
        algorithms: Vec<Algorithm>,
        /// Problem sense to time.
        #[arg(long, default_value = "minimax")]
        problem: ProblemSense,
        /// Seed of the synthetic dataset stream.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Point dimensionality.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Per-run budget in seconds; slower runs become timeout rows.
        #[arg(long, default_value_t = 7200.0)]
        timeout: f64,
        /// Timed repetitions per cell; the minimum is recorded.
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Report CSV path.
        #[arg(long, default_value = "bench-report.csv")]
        output: PathBuf,
        /// Summary CSV path (fitted exponents).
        #[arg(long, default_value = "bench-summary.csv")]
        summary: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    let code = match cli.command {
        Command::Compute {
            input,
            format,
            problem,
            algo,
            output,
            parallel,
        } => cmd_compute(&input, format, problem, algo, output.as_deref(), parallel),
        Command::Verify {
            n_max,
            seeds,
            problem,
        } => cmd_verify(n_max, seeds, problem),
        Command::Bench {
            sizes,
            algorithms,
            problem,
            seed,
            dim,
            timeout,
            reps,
            output,
            summary,
        } => cmd_bench(
            sizes, algorithms, problem, seed, dim, timeout, reps, &output, &summary,
        ),
    };
    ExitCode::from(code)
}

fn cmd_compute(
    input: &std::path::Path,
    format: InputFormat,
    problem: ProblemSense,
    algo: Algorithm,
    output: Option<&std::path::Path>,
    parallel: bool,
) -> u8 {
    if parallel && algo != Algorithm::Algo4 {
        eprintln!("appd: --parallel applies only to --algo algo4");
        return EXIT_USAGE;
    }
    let graph = match load_graph(input, format) {
        Ok(graph) => graph,
        Err(err) => {
            eprintln!("appd: {}", err);
            return EXIT_FAILURE;
        }
    };
    let matrix = if parallel {
        appd_algo4_parallel(&graph, problem)
    } else {
        algo.run(&graph, problem)
    };
    let result = match output {
        Some(path) => {
            File::create(path).and_then(|file| write_matrix_csv(&matrix, &mut BufWriter::new(file)))
        }
        None => {
            let stdout = io::stdout();
            write_matrix_csv(&matrix, &mut stdout.lock())
        }
    };
    if let Err(err) = result {
        eprintln!("appd: writing output: {}", err);
        return EXIT_FAILURE;
    }
    0
}

/// A cell where two solvers disagree.
struct Mismatch {
    lhs: &'static str,
    rhs: &'static str,
    cell: (usize, usize),
    lhs_value: f64,
    rhs_value: f64,
}

/// Compares every solver output against the reference, bit for bit.
fn check_all_equal(
    reference: (&'static str, &DistanceMatrix),
    others: &[(&'static str, &DistanceMatrix)],
) -> Option<Mismatch> {
    let (ref_name, ref_matrix) = reference;
    for &(name, matrix) in others {
        if let Some((i, j)) = ref_matrix.first_difference(matrix) {
            return Some(Mismatch {
                lhs: ref_name,
                rhs: name,
                cell: (i, j),
                lhs_value: ref_matrix.get(i, j),
                rhs_value: matrix.get(i, j),
            });
        }
    }
    None
}

/// Structural checks on one solver output: symmetry, zero diagonal, the
/// min/max triangle inequality, and weight membership.
fn check_invariants(graph: &DenseGraph, matrix: &DistanceMatrix) -> Result<(), String> {
    let n = matrix.len();
    if !matrix.is_symmetric_with_zero_diagonal() {
        return Err("matrix is not symmetric with a zero diagonal".into());
    }
    // Every off-diagonal value is a copy of some input weight.
    let mut weight_bits: Vec<u64> = graph.weights().iter().map(|w| w.to_bits()).collect();
    weight_bits.sort_unstable();
    for i in 0..n {
        for j in 0..n {
            if i != j
                && weight_bits
                    .binary_search(&matrix.get(i, j).to_bits())
                    .is_err()
            {
                return Err(format!("value at ({}, {}) is not an input weight", i, j));
            }
        }
    }
    // Minimax: d(i,j) <= max(d(i,k), d(k,j)); widest: the min dual.
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let direct = matrix.get(i, j);
            for k in 0..n {
                let through = match matrix.sense() {
                    ProblemSense::Minimax => matrix.get(i, k).max(matrix.get(k, j)),
                    ProblemSense::Widest => matrix.get(i, k).min(matrix.get(k, j)),
                };
                let violated = match matrix.sense() {
                    ProblemSense::Minimax => direct > through,
                    ProblemSense::Widest => direct < through,
                };
                if violated {
                    return Err(format!(
                        "triangle violation at ({}, {}) through {}: {} vs {}",
                        i, j, k, direct, through
                    ));
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(n_max: usize, seeds: u64, problem: ProblemSense) -> u8 {
    if n_max < 2 {
        eprintln!("appd: --n-max must be at least 2");
        return EXIT_USAGE;
    }
    let mut checked = 0u64;
    for seed in 0..seeds {
        let n = 2 + (seed as usize) % (n_max - 1);
        let points = appd::bench::generate_random_points(n, 2, seed);
        let graph = complete_graph_from_points(&points).expect("random points are finite");

        let algo4 = Algorithm::Algo4.run(&graph, problem);
        let floyd = Algorithm::Floyd.run(&graph, problem);
        let mst_path = Algorithm::MstPath.run(&graph, problem);
        let brute = if n <= appd::baselines::BRUTE_FORCE_MAX_VERTICES {
            Some(brute_force_appd(&graph, problem).expect("n is within the brute-force cap"))
        } else {
            None
        };

        let mut others = vec![("algo4", &algo4), ("mst-path", &mst_path)];
        if let Some(ref brute) = brute {
            others.push(("brute-force", brute));
        }
        if let Some(mismatch) = check_all_equal(("floyd", &floyd), &others) {
            report_mismatch(seed, n, &graph, &mismatch);
            return EXIT_MISMATCH;
        }
        for (name, matrix) in std::iter::once(("floyd", &floyd)).chain(others) {
            if let Err(msg) = check_invariants(&graph, matrix) {
                eprintln!(
                    "appd: invariant failure in {} at seed {} (n = {}): {}",
                    name, seed, n, msg
                );
                return EXIT_MISMATCH;
            }
        }
        checked += 1;
    }
    println!(
        "verified {} seeded graphs (n cycling 2..={}, {}): all solvers bit-identical",
        checked, n_max, problem
    );
    0
}

fn report_mismatch(seed: u64, n: usize, graph: &DenseGraph, mismatch: &Mismatch) {
    eprintln!(
        "appd: {} and {} disagree at cell ({}, {}) for seed {} (n = {}): {} vs {}",
        mismatch.lhs,
        mismatch.rhs,
        mismatch.cell.0,
        mismatch.cell.1,
        seed,
        n,
        mismatch.lhs_value,
        mismatch.rhs_value
    );
    eprintln!("counterexample weight matrix:");
    let stderr = io::stderr();
    let _ = write_graph_csv(graph, &mut stderr.lock());
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    sizes: Vec<usize>,
    algorithms: Vec<Algorithm>,
    problem: ProblemSense,
    seed: u64,
    dim: usize,
    timeout: f64,
    reps: usize,
    output: &std::path::Path,
    summary: &std::path::Path,
) -> u8 {
    if !timeout.is_finite() || timeout <= 0.0 {
        eprintln!("appd: --timeout must be a positive number of seconds");
        return EXIT_USAGE;
    }
    let config = BenchConfig {
        sizes,
        dimension: dim,
        seed,
        algorithms,
        problem,
        timeout: Duration::from_secs_f64(timeout),
        repetitions: reps,
    };
    if let Err(err) = config.validate() {
        eprintln!("appd: {}", err);
        return EXIT_USAGE;
    }

    let report = run_benchmark(&config);

    let written = File::create(output)
        .and_then(|file| report.write_csv(&mut BufWriter::new(file)))
        .and_then(|_| {
            File::create(summary)
                .and_then(|file| report.write_summary_csv(&mut BufWriter::new(file)))
        });
    if let Err(err) = written {
        eprintln!("appd: writing benchmark output: {}", err);
        return EXIT_FAILURE;
    }
    eprintln!("wrote {} and {}", output.display(), summary.display());

    let mismatches = report.checksum_mismatches();
    if !mismatches.is_empty() {
        for (n, a, b) in &mismatches {
            eprintln!(
                "appd: checksum mismatch between {} and {} at n = {}",
                a, b, n
            );
        }
        return EXIT_MISMATCH;
    }

    let fits = report.scaling_fits();
    if fits.is_empty() {
        println!("no scaling fits (need at least 3 completed rows per algorithm)");
    } else {
        println!(
            "{:<10} {:>8} {:>8} {:>10}",
            "algorithm", "fit-min", "fit-max", "exponent"
        );
        for fit in fits {
            println!(
                "{:<10} {:>8} {:>8} {:>10.3}",
                fit.algorithm.as_str(),
                fit.fit_min_n,
                fit.fit_max_n,
                fit.exponent
            );
        }
    }
    0
}
