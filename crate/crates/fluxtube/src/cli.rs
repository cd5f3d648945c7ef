//! Command-line surface over the whole crate.
//!
//! One subcommand per capability: `potential` (tetraquark breakdown for a
//! configuration file), `baryon` (three-quark Y tree), `curve` (stability
//! curve CSV), `crossover` (stability onset mass ratio), `certify`
//! (inequality sweeps) and `bench` (solver timing against the descent
//! oracle).
//!
//! Machine-readable results go to stdout as JSON (CSV for `curve`), and are
//! byte-identical for identical arguments and seeds. Timings, which cannot
//! be deterministic, go to stderr. Exit codes: 0 on success, 1 for
//! computation failures or failed certification, 2 for flag errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::{sample_nondegenerate, TetraConfig, Vec3};
use crate::spectrum;
use crate::steiner3::fermat_point;
use crate::steiner4::{
    u_potential, u_potential_with_solver, v4_bruteforce, v4_spatial_iterative,
    v4_spatial_polynomial, v4_spatial_rubinstein, SolverChoice, SteinerKind, SteinerTree,
};
use crate::verify;

/// Every solver must reproduce the descent oracle at least this well on a
/// genuine-tree batch for `bench` to exit successfully.
const BENCH_ERROR_TOLERANCE: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "fluxtube",
    version,
    about = "Flux-tube confinement potentials and tetraquark stability bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tetraquark potential breakdown for a configuration file
    /// ({"v1":[x,y,z],"v2":...,"v3":...,"v4":...}).
    Potential {
        /// Path to the configuration JSON.
        #[arg(long)]
        config: PathBuf,
        /// Use one specific connected-tree solver instead of the fallback
        /// chain (the chain is always correct-by-oracle; a single solver is
        /// trusted as-is).
        #[arg(long, value_enum)]
        solver: Option<SolverArg>,
    },
    /// Print the three-quark Y-tree junction and potential for a triangle
    /// file ({"v1":[x,y,z],"v2":...,"v3":...}).
    Baryon {
        /// Path to the triangle JSON.
        #[arg(long)]
        config: PathBuf,
    },
    /// Emit the stability-curve CSV (three energies over e0 per mass ratio)
    /// on a log-spaced grid.
    Curve {
        /// Smallest mass ratio.
        #[arg(long)]
        m_min: f64,
        /// Largest mass ratio.
        #[arg(long)]
        m_max: f64,
        /// Number of grid points (>= 2).
        #[arg(long)]
        points: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the mass ratio where the sharper upper bound crosses the
    /// two-meson threshold, together with both energies there.
    Crossover,
    /// Run the inequality certification sweeps and reproduce the
    /// connected-tree counterexample; nonzero exit on any violation.
    Certify {
        /// Adversarial (and random) samples per sweep.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Sweep seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time every connected-tree solver on one batch of genuine-tree
    /// configurations and compare against the descent oracle; nonzero exit
    /// if any solver drifts beyond 1e-6.
    Bench {
        /// Batch size.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Batch seed.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// `--solver` flag values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Iterative,
    Rubinstein,
    Polynomial,
    Bruteforce,
}

impl From<SolverArg> for SolverChoice {
    fn from(arg: SolverArg) -> SolverChoice {
        match arg {
            SolverArg::Iterative => SolverChoice::Iterative,
            SolverArg::Rubinstein => SolverChoice::Rubinstein,
            SolverArg::Polynomial => SolverChoice::Polynomial,
            SolverArg::Bruteforce => SolverChoice::BruteForce,
        }
    }
}

/// Parses `args` (including the program name) and runs the selected
/// command, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here as successful displays.
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    apply_thread_cap(err);
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Honors the optional FLUXTUBE_THREADS cap on batch parallelism. Ignores
/// the request when a global pool already exists (e.g. repeated in-process
/// runs).
fn apply_thread_cap(err: &mut dyn Write) {
    if let Ok(text) = std::env::var("FLUXTUBE_THREADS") {
        match text.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
            _ => {
                let _ = writeln!(err, "ignoring invalid FLUXTUBE_THREADS value {text:?}");
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Potential { config, solver } => {
            let cfg = TetraConfig::from_json(&fs::read_to_string(config)?)?;
            let breakdown = match solver {
                None => u_potential(&cfg),
                Some(choice) => u_potential_with_solver(&cfg, choice.into())?,
            };
            emit_json(out, &breakdown)?;
            Ok(0)
        }
        Command::Baryon { config } => {
            let triangle: TriangleFile = serde_json::from_str(&fs::read_to_string(config)?)?;
            if !(triangle.v1.is_finite() && triangle.v2.is_finite() && triangle.v3.is_finite()) {
                return Err(Error::NonFinite { context: "triangle JSON" });
            }
            emit_json(out, &fermat_point(triangle.v1, triangle.v2, triangle.v3))?;
            Ok(0)
        }
        Command::Curve { m_min, m_max, points, out: path } => {
            let curve = spectrum::bound_curve(m_min, m_max, points)?;
            match path {
                Some(path) => {
                    let mut file = fs::File::create(path)?;
                    spectrum::write_curve_csv(&mut file, &curve)?;
                }
                None => spectrum::write_curve_csv(&mut *out, &curve)?,
            }
            Ok(0)
        }
        Command::Crossover => {
            let m_star = spectrum::crossover_mass()?;
            emit_json(
                out,
                &json!({
                    "m_star": m_star,
                    "e_double_prime": spectrum::bound_e_double_prime(m_star)?,
                    "e_threshold": spectrum::threshold(m_star)?,
                }),
            )?;
            Ok(0)
        }
        Command::Certify { n, seed } => {
            let u_bound = verify::certify_u_bound(n, seed)?;
            let midpoint = verify::certify_midpoint_bound(n, seed)?;
            let example = verify::find_v4_bound_violation(seed)?;
            let clean = u_bound.violations == 0 && midpoint.violations == 0;
            emit_json(
                out,
                &json!({
                    "u_bound": u_bound,
                    "midpoint": midpoint,
                    "v4_violation_example": example,
                }),
            )?;
            Ok(if clean { 0 } else { 1 })
        }
        Command::Bench { n, seed } => bench(n, seed, out, err),
    }
}

/// Three-point input file for the `baryon` command.
#[derive(Deserialize)]
struct TriangleFile {
    v1: Vec3,
    v2: Vec3,
    v3: Vec3,
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Per-solver accuracy row of the `bench` report (stdout JSON; timings go
/// to stderr because they are not reproducible).
#[derive(Serialize)]
struct BenchRow {
    solver: &'static str,
    n: usize,
    errors: usize,
    max_abs_error: f64,
    mean_abs_error: f64,
}

fn bench(n: usize, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if n == 0 {
        return Err(Error::InvalidRange { min: 1.0, max: f64::INFINITY, points: 0 });
    }
    // One shared batch of unit-diameter configurations on which the descent
    // oracle finds a genuine two-junction tree, so every solver is measured
    // on its intended regime.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut batch = Vec::with_capacity(n);
    let mut oracle = Vec::with_capacity(n);
    while batch.len() < n {
        let cfg = sample_nondegenerate(&mut rng, 1.0, 0.05).normalized_to_unit_diameter();
        let tree = v4_bruteforce(&cfg);
        if tree.kind == SteinerKind::Genuine {
            batch.push(cfg);
            oracle.push(tree.length);
        }
    }

    type Solver = fn(&TetraConfig) -> Result<SteinerTree>;
    let solvers: [(&'static str, Solver); 4] = [
        ("iterative", v4_spatial_iterative),
        ("rubinstein", v4_spatial_rubinstein),
        ("polynomial", v4_spatial_polynomial),
        ("bruteforce", |cfg| Ok(v4_bruteforce(cfg))),
    ];

    let mut rows = Vec::new();
    let mut all_within_tolerance = true;
    for (name, solve) in solvers {
        let mut times_us = Vec::with_capacity(n);
        let mut errors = 0usize;
        let mut max_abs_error = 0.0f64;
        let mut error_sum = 0.0f64;
        let mut compared = 0usize;
        for (cfg, &truth) in batch.iter().zip(&oracle) {
            let start = Instant::now();
            let result = solve(cfg);
            times_us.push(start.elapsed().as_secs_f64() * 1e6);
            match result {
                Ok(tree) => {
                    let abs_error = (tree.length - truth).abs();
                    max_abs_error = max_abs_error.max(abs_error);
                    error_sum += abs_error;
                    compared += 1;
                }
                Err(_) => errors += 1,
            }
        }
        let mean = times_us.iter().sum::<f64>() / times_us.len() as f64;
        let variance =
            times_us.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / times_us.len() as f64;
        writeln!(
            err,
            "{name}: mean {mean:.1} us, stddev {:.1} us, total {:.2} ms",
            variance.sqrt(),
            times_us.iter().sum::<f64>() / 1e3,
        )?;
        if compared == 0 || max_abs_error > BENCH_ERROR_TOLERANCE {
            all_within_tolerance = false;
        }
        rows.push(BenchRow {
            solver: name,
            n,
            errors,
            max_abs_error,
            mean_abs_error: if compared > 0 { error_sum / compared as f64 } else { f64::NAN },
        });
    }
    emit_json(out, &rows)?;
    Ok(if all_within_tolerance { 0 } else { 1 })
}
