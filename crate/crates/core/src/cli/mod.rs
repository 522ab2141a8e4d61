//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numerical failure.

pub mod input;
pub mod problem;
pub mod table;
pub mod tables;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{estimate_at_samples, find_extrema, query_field};
use crate::bvp::solve_linear_bvp;
use crate::eigen::{solve_spectrum, solve_spectrum_validated};
use crate::error::Error;
use problem::{Job, ProblemSpec};
use table::{Cell, Format, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "meshfree-taylor",
    version,
    about = "Meshfree Taylor-series collocation toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    /// Output file (standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derivative table at every sample site.
    Derivatives {
        samples: PathBuf,
        /// Highest total derivative order to report.
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Values or derivatives at query points.
    Query {
        samples: PathBuf,
        queries: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extrema of the 1D interpolant on [lo, hi].
    Extrema {
        samples: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Linear two-point boundary-value problem from a spec file.
    Bvp {
        spec: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalues of a 1D Schrödinger-type problem from a spec file.
    Eigen {
        spec: PathBuf,
        #[arg(long)]
        modes: Option<usize>,
        /// Drop modes that drift by more than 10% when four nodes are added.
        #[arg(long)]
        validated: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regenerate one of the bundled benchmark tables (1-5).
    PaperTables {
        #[arg(long)]
        table: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_)
            | Error::DimensionMismatch { .. }
            | Error::EntryNotInOrdering(_)
            | Error::OrderTooLarge { .. } => EXIT_USAGE,
            Error::DuplicateSample { .. }
            | Error::SingularSystem { .. }
            | Error::NonFiniteCoefficient { .. }
            | Error::NonFinitePotential { .. }
            | Error::EigenFailure { .. } => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> Result<fs::File, Failure> {
    fs::File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(table: &Table, output: &OutputArgs, fallback: Option<Format>) -> Result<(), Failure> {
    let text = table.render(output.format.or(fallback).unwrap_or_default());
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn coordinate_headers(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).collect()
}

pub fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Derivatives { samples, order, output } => {
            let samples = input::read_samples(open(&samples)?)?;
            let Some(first) = samples.first() else {
                return emit(&Table::new(["x1"]), &output, None);
            };
            let d = first.point.dimension();
            let est = estimate_at_samples(&samples, order)?;
            let mut headers = coordinate_headers(d);
            headers.extend(est[0].ordering.indices().iter().map(|m| format!("D{m}")));
            headers.push("condition".into());
            let mut t = Table::new(headers);
            for (s, dv) in samples.iter().zip(&est) {
                let mut row: Vec<Cell> = s.point.coords().iter().map(|&c| c.into()).collect();
                row.extend(dv.values.iter().map(|&v| Cell::from(v)));
                row.push(dv.condition.into());
                t.push(row);
            }
            emit(&t, &output, None)
        }
        Command::Query {
            samples,
            queries,
            output,
        } => {
            let samples = input::read_samples(open(&samples)?)?;
            let (d, requests) = input::read_queries(open(&queries)?)?;
            let mut headers = coordinate_headers(d);
            headers.extend(["order".to_string(), "value".to_string()]);
            let mut t = Table::new(headers);
            if !requests.is_empty() {
                let values = query_field(&samples, &requests)?;
                for (r, v) in requests.iter().zip(values) {
                    let mut row: Vec<Cell> = r.target.coords().iter().map(|&c| c.into()).collect();
                    row.push(r.order.to_string().into());
                    row.push(v.into());
                    t.push(row);
                }
            }
            emit(&t, &output, None)
        }
        Command::Extrema {
            samples,
            lo,
            hi,
            output,
        } => {
            if !(lo < hi) {
                return Err(usage(format!("--lo ({lo}) must be below --hi ({hi})")));
            }
            let samples = input::read_samples(open(&samples)?)?;
            let found = find_extrema(&samples, lo, hi)?;
            let mut t = Table::new(["location", "kind", "derivative_residual"]);
            for e in found {
                t.push(vec![
                    e.location.into(),
                    e.kind.as_str().into(),
                    e.derivative_residual.into(),
                ]);
            }
            emit(&t, &output, None)
        }
        Command::Bvp { spec, output } => {
            let spec = ProblemSpec::parse(&read_text(&spec)?)?;
            let job = spec.bvp()?;
            let u = solve_linear_bvp(&job.problem)?;
            let mut headers = vec!["x", "numeric"];
            if job.exact.is_some() {
                headers.extend(["exact", "rel_diff"]);
            }
            let mut t = Table::new(headers);
            for (x, v) in job.problem.nodes.as_slice().iter().zip(u) {
                let mut row: Vec<Cell> = vec![(*x).into(), v.into()];
                if let Some(exact) = &job.exact {
                    let e = exact(*x);
                    row.push(e.into());
                    row.push(crate::analysis::relative_error(v, e).into());
                }
                t.push(row);
            }
            emit(&t, &output, spec.format())
        }
        Command::Eigen {
            spec,
            modes,
            validated,
            output,
        } => {
            let spec = ProblemSpec::parse(&read_text(&spec)?)?;
            let Job::Eigen(job) = spec.job()? else {
                return Err(usage("spec does not describe an eigenproblem"));
            };
            let modes = modes.unwrap_or(job.modes);
            let spectrum = if validated || job.validated {
                solve_spectrum_validated(&job.problem, modes)?
            } else {
                solve_spectrum(&job.problem, modes)?
            };
            emit(&tables::spectrum_table(&job.kind, &spectrum), &output, spec.format())
        }
        Command::PaperTables { table, output } => emit(&tables::table(table)?, &output, None),
    }
}

/// Parses arguments, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
