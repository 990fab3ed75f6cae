//! Command-line front end. Natural units (ħ = c = 1) throughout.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 numerical non-convergence.

mod output;

pub use output::{format_sig9, Format, OutputRecord, SCHEMA_VERSION};

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_pair, constant_b, energy_scale, nr_bounds, BoundResult};
use crate::error::Error;
use crate::jacobi::{jacobi_matrix, pair_sum_identity_residual, random_configuration};
use crate::model::alpha;
use crate::spectral::{reduced_coefficients, reduced_problem_energy, reduced_problem_grid};
use crate::variational::{gaussian_energy, minimize_gaussian_numeric, optimal_a};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Residual above which identity-check reports failure.
pub const IDENTITY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "boson-bounds",
    version,
    about = "Energy bounds for N massless bosons with oscillator pair potentials",
    long_about = "Energy bounds for H = sum |p_i| + sum_{i<j} gamma |r_i - r_j|^2 \
                  (natural units, hbar = c = 1), with numerical cross-checks."
)]
pub struct Cli {
    /// Output format [default: text, csv for sweep]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper bound for N bosons with coupling gamma.
    #[command(allow_negative_numbers = true)]
    Bounds {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// Bounds for the nonrelativistic linear-potential system.
    #[command(allow_negative_numbers = true)]
    Nrbounds {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mass: f64,
    },
    /// Gaussian trial energy at a given width, or optimized.
    #[command(
        allow_negative_numbers = true,
        group(ArgGroup::new("mode").required(true).args(["a", "optimize"]))
    )]
    Trial {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Width parameter of the Gaussian (inverse length squared).
        #[arg(long)]
        a: Option<f64>,
        /// Minimize analytically and numerically and compare.
        #[arg(long)]
        optimize: bool,
        /// Relative tolerance of the numeric minimizer.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare the bounds with a spectral solve of the reduced problem.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 2048)]
        grid_points: usize,
        /// Grid tolerance relative to the lower bound.
        #[arg(long, default_value_t = 2e-5)]
        rel_tol: f64,
    },
    /// One row of bounds per N in a range.
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long)]
        n_min: i64,
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// Check Jacobi-frame identities on seeded random configurations
    /// (ChaCha8 seeded with --seed, components uniform on [-1, 1]).
    #[command(allow_negative_numbers = true)]
    IdentityCheck {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure carrying an exit code and a message for stderr. A record may
/// still be printed (verification failures).
struct Failure {
    code: i32,
    message: String,
}

type Outcome = std::result::Result<(OutputRecord, i32), Failure>;

fn flag_for(field: &str) -> String {
    match field {
        "n_particles" => "--n".into(),
        other => format!("--{}", other.replace('_', "-")),
    }
}

fn fail(err: Error) -> Failure {
    match &err {
        Error::NonPhysicalParameter { field, .. } => Failure {
            code: EXIT_USAGE,
            message: format!("invalid value for `{}`: {err}", flag_for(field)),
        },
        Error::ConvergenceFailure { .. } | Error::GridTooCoarse { .. } => Failure {
            code: EXIT_NO_CONVERGENCE,
            message: err.to_string(),
        },
        Error::DomainError { .. } | Error::DimensionMismatch { .. } => Failure {
            code: EXIT_USAGE,
            message: err.to_string(),
        },
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn particle_count(flag: &str, n: i64) -> std::result::Result<usize, Failure> {
    usize::try_from(n).map_err(|_| usage(format!("invalid value for `{flag}`: {n} (must be >= 2)")))
}

fn put_bounds(record: &mut OutputRecord, b: &BoundResult) {
    record
        .result("lower", b.lower)
        .result("upper", b.upper)
        .result("mean", b.mean)
        .result("rel_half_gap", b.rel_half_gap);
}

fn cmd_bounds(n: i64, gamma: f64) -> Outcome {
    let count = particle_count("--n", n)?;
    let b = bound_pair(count, gamma).map_err(fail)?;
    let mut r = OutputRecord::new("bounds");
    r.input("n", n).input("gamma", gamma);
    put_bounds(&mut r, &b);
    r.diagnostic("energy_scale", energy_scale(count, gamma).map_err(fail)?);
    Ok((r, EXIT_OK))
}

fn cmd_nrbounds(n: i64, lambda: f64, mass: f64) -> Outcome {
    let count = particle_count("--n", n)?;
    let b = nr_bounds(count, lambda, mass).map_err(fail)?;
    let mut r = OutputRecord::new("nrbounds");
    r.input("n", n).input("lambda", lambda).input("mass", mass);
    put_bounds(&mut r, &b);
    Ok((r, EXIT_OK))
}

fn cmd_trial(n: i64, gamma: f64, a: Option<f64>, optimize: bool, tol: f64) -> Outcome {
    let count = particle_count("--n", n)?;
    let mut r = OutputRecord::new("trial");
    r.input("n", n).input("gamma", gamma);
    match (a, optimize) {
        (Some(a), false) => {
            let t = gaussian_energy(count, gamma, a).map_err(fail)?;
            r.input("a", a);
            r.result("a", t.a)
                .result("energy", t.energy)
                .result("kinetic_part", t.kinetic_part)
                .result("potential_part", t.potential_part);
        }
        (None, true) => {
            let a_star = optimal_a(count, gamma).map_err(fail)?;
            let analytic = gaussian_energy(count, gamma, a_star).map_err(fail)?;
            let numeric = minimize_gaussian_numeric(count, gamma, tol).map_err(fail)?;
            let a_disc = (numeric.a - a_star).abs() / a_star;
            let e_disc = (numeric.energy - analytic.energy).abs() / analytic.energy;
            r.input("optimize", true).input("tol", tol);
            r.result("a_analytic", a_star)
                .result("energy_analytic", analytic.energy)
                .result("a_numeric", numeric.a)
                .result("energy_numeric", numeric.energy)
                .result("a_discrepancy", a_disc)
                .result("energy_discrepancy", e_disc);
            r.diagnostic("bracket_expansions", numeric.expansions)
                .diagnostic("evaluations", numeric.evaluations)
                .diagnostic(
                    "coefficient",
                    analytic.energy / energy_scale(count, gamma).map_err(fail)?,
                )
                .diagnostic("constant_b", constant_b());
        }
        _ => {
            return Err(usage(
                "exactly one of `--a` or `--optimize` is required".into(),
            ))
        }
    }
    Ok((r, EXIT_OK))
}

fn cmd_verify(n: i64, gamma: f64, grid_points: usize, rel_tol: f64) -> Outcome {
    let count = particle_count("--n", n)?;
    if !(rel_tol.is_finite() && rel_tol > 0.0) {
        return Err(usage(format!("invalid value for `--rel-tol`: {rel_tol}")));
    }
    let b = bound_pair(count, gamma).map_err(fail)?;
    let tol = rel_tol * b.lower;
    let grid = reduced_problem_grid(count, gamma, grid_points).map_err(fail)?;
    let oracle = reduced_problem_energy(count, gamma, &grid, tol).map_err(fail)?;
    let (kappa, c) = reduced_coefficients(count, gamma).map_err(fail)?;

    let sandwich_ok = b.lower - tol <= oracle.energy && oracle.energy <= b.upper;
    let lower_is_tight = (oracle.energy - b.lower).abs() <= tol;

    let mut r = OutputRecord::new("verify");
    r.input("n", n)
        .input("gamma", gamma)
        .input("grid_points", grid_points)
        .input("rel_tol", rel_tol);
    r.result("oracle", oracle.energy)
        .result("lower", b.lower)
        .result("upper", b.upper)
        .result("oracle_minus_lower", oracle.energy - b.lower)
        .result("sandwich_ok", sandwich_ok)
        .result("lower_is_tight", lower_is_tight);
    r.diagnostic("tolerance", tol)
        .diagnostic("richardson_estimate", oracle.richardson_estimate)
        .diagnostic("grid_error", oracle.grid_error())
        .diagnostic("spacing_error", oracle.spacing_error)
        .diagnostic("residual", oracle.residual)
        .diagnostic("tail_mass", oracle.tail_mass)
        .diagnostic("r_max", oracle.r_max)
        .diagnostic("n_points", oracle.n_points)
        .diagnostic("converged", oracle.converged)
        .diagnostic("kappa", kappa)
        .diagnostic("c", c);
    let code = if sandwich_ok {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    };
    Ok((r, code))
}

fn cmd_sweep(n_min: i64, n_max: i64, gamma: f64) -> Outcome {
    if n_min > n_max {
        return Err(usage(format!(
            "`--n-min` ({n_min}) must not exceed `--n-max` ({n_max})"
        )));
    }
    let lo = particle_count("--n-min", n_min)?;
    let hi = particle_count("--n-max", n_max)?;
    let mut rows = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        let b = bound_pair(n, gamma).map_err(|e| match e.field() {
            Some("n_particles") => usage(format!("invalid value for `--n-min`/`--n-max`: {e}")),
            _ => fail(e),
        })?;
        let mut row = serde_json::Map::new();
        row.insert("n".into(), (n as u64).into());
        row.insert("lower".into(), b.lower.into());
        row.insert("upper".into(), b.upper.into());
        row.insert("mean".into(), b.mean.into());
        row.insert("rel_half_gap".into(), b.rel_half_gap.into());
        rows.push(row);
    }
    let mut r = OutputRecord::new("sweep");
    r.input("n_min", n_min)
        .input("n_max", n_max)
        .input("gamma", gamma);
    r.diagnostic("rows", rows.len());
    r.rows = Some(rows);
    Ok((r, EXIT_OK))
}

fn cmd_identity_check(n: i64, samples: usize, seed: u64) -> Outcome {
    let count = particle_count("--n", n)?;
    alpha(count).map_err(fail)?;
    if samples == 0 {
        return Err(usage("invalid value for `--samples`: must be >= 1".into()));
    }
    let frame = jacobi_matrix(count).map_err(fail)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_pair = 0.0_f64;
    for _ in 0..samples {
        let config = random_configuration(count, false, &mut rng);
        max_pair = max_pair.max(pair_sum_identity_residual(&frame, &config).map_err(fail)?);
    }
    let ortho = frame.orthogonality_residual();
    let passed = max_pair < IDENTITY_THRESHOLD && ortho < IDENTITY_THRESHOLD;

    let mut r = OutputRecord::new("identity-check");
    r.input("n", n)
        .input("samples", samples)
        .input("seed", seed);
    r.result("max_pair_sum_residual", max_pair)
        .result("orthogonality_residual", ortho)
        .result("passed", passed);
    r.diagnostic("threshold", IDENTITY_THRESHOLD)
        .diagnostic("generator", "ChaCha8Rng::seed_from_u64, uniform [-1, 1]");
    let code = if passed {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    };
    Ok((r, code))
}

fn dispatch(cli: &Cli) -> (Outcome, Format) {
    let default_format = match cli.command {
        Command::Sweep { .. } => Format::Csv,
        _ => Format::Text,
    };
    let outcome = match cli.command {
        Command::Bounds { n, gamma } => cmd_bounds(n, gamma),
        Command::Nrbounds { n, lambda, mass } => cmd_nrbounds(n, lambda, mass),
        Command::Trial {
            n,
            gamma,
            a,
            optimize,
            tol,
        } => cmd_trial(n, gamma, a, optimize, tol),
        Command::Verify {
            n,
            gamma,
            grid_points,
            rel_tol,
        } => cmd_verify(n, gamma, grid_points, rel_tol),
        Command::Sweep {
            n_min,
            n_max,
            gamma,
        } => cmd_sweep(n_min, n_max, gamma),
        Command::IdentityCheck { n, samples, seed } => cmd_identity_check(n, samples, seed),
    };
    (outcome, cli.format.unwrap_or(default_format))
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };

    let (outcome, format) = dispatch(&cli);
    match outcome {
        Ok((record, code)) => {
            let _ = out.write_all(record.render(format).as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
