//! Command-line front end.
//!
//! Every subcommand parses and validates its inputs, computes the full
//! result, and only then writes to standard output, so a domain error leaves
//! standard output empty.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::eisenstein::{
    classical_g_qexp, f, g, gen_coeffs, q_bracket_coeffs, remark_decompose, truncated_classical,
    SeriesEntry, Weight,
};
use crate::error::{Error, Result};
use crate::lattice::{render_svg, SvgOptions};
use crate::numerics::{require_nonreal, Backend, Float, ParsedScalar, Rational, Scalar};
use crate::partitions::Partition;
use crate::verify::{run_suite, Suite, SuiteConfig};

/// Environment variable capping the worker count; `0` or unset means automatic.
pub const THREADS_ENV: &str = "PARTEIS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "parteis",
    version,
    about = "Partition Eisenstein series over Ferrers-Young lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single-partition series f_k(λ, z).
    EvalF {
        /// Comma-separated non-increasing parts; "" is the empty partition.
        #[arg(long)]
        partition: String,
        #[arg(long, default_value = "1+1i", allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
    },
    /// Partition series g_k(n, z).
    EvalG {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value = "1+1i", allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
    },
    /// Coefficients of the generating series in q.
    Series {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value = "1+1i", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        /// Multiply by the Euler product first.
        #[arg(long)]
        q_bracket: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
    },
    /// Square truncation of the classical lattice sum.
    Truncated {
        #[arg(long)]
        k2: i64,
        #[arg(long, default_value = "1+1i", allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        n: usize,
        /// Print the rectangle/axis split as JSON instead of the value.
        #[arg(long)]
        decompose: bool,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
    },
    /// Classical Eisenstein series from its q-expansion.
    Classical {
        #[arg(long)]
        k2: i64,
        #[arg(long, default_value = "2i", allow_hyphen_values = true)]
        tau: String,
        /// Number of q-powers; chosen from the tail bound when omitted.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Run identity suites and write a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
        /// JSON suite configuration; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave out the generation timestamp.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Draw the lattice of a partition as SVG.
    LatticeSvg {
        #[arg(long)]
        partition: String,
        #[arg(long, default_value = "1+1i", allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 20.0)]
        scale: f64,
        #[arg(long, default_value_t = 2.5)]
        dot_radius: f64,
        #[arg(long)]
        no_axes: bool,
        #[arg(long)]
        no_diagonal: bool,
    },
}

/// What a successful command produced.
#[derive(Debug, PartialEq)]
pub enum Outcome {
    Stdout(String),
    /// Written to a file; the message goes to standard error.
    Written(String),
    /// Verification ran but some checks failed.
    Failed {
        stdout: Option<String>,
        message: String,
    },
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    text.parse()
}

/// Parses `z` for `S`, rejecting decimals on the rational backend and real values.
pub fn parse_z<S: Scalar>(text: &str) -> Result<S> {
    let z = S::from_parsed(&ParsedScalar::parse(text)?)?;
    require_nonreal(&z)?;
    Ok(z)
}

fn eval_f<S: Scalar>(partition: &str, z: &str, k: i64) -> Result<String> {
    let lambda = parse_partition(partition)?;
    Ok(f(&lambda, &parse_z::<S>(z)?, Weight(k))?.to_text())
}

fn eval_g<S: Scalar>(n: i64, z: &str, k: i64) -> Result<String> {
    let z = parse_z::<S>(z)?;
    let n = usize::try_from(n).map_err(|_| Error::out_of_range("n", "nonnegative", n))?;
    Ok(g(n, &z, Weight(k))?.to_text())
}

fn series<S: SeriesEntry>(
    k: i64,
    z: &str,
    nmax: usize,
    bracket: bool,
    format: Format,
) -> Result<String> {
    let z = parse_z::<S>(z)?;
    let s = if bracket {
        q_bracket_coeffs(Weight(k), &z, nmax)?
    } else {
        gen_coeffs(Weight(k), &z, nmax)?
    };
    Ok(match format {
        Format::Json => s.to_json() + "\n",
        Format::Csv => s.to_csv(),
    })
}

fn truncated<S: Scalar>(k2: i64, z: &str, n: usize, decompose: bool) -> Result<String> {
    let z = parse_z::<S>(z)?;
    if !decompose {
        return Ok(truncated_classical(Weight(k2), &z, n)?.to_text());
    }
    let d = remark_decompose(Weight(k2), &z, n)?;
    let doc = json!({
        "lhs": d.lhs.to_text(),
        "rect_term": d.rect_term.to_text(),
        "axis_term": d.axis_term.to_text(),
        "residual": d.residual.to_text(),
    });
    Ok(serde_json::to_string_pretty(&doc).expect("strings serialize"))
}

fn by_backend<T>(
    backend: Backend,
    float: impl FnOnce() -> Result<T>,
    rational: impl FnOnce() -> Result<T>,
) -> Result<T> {
    match backend {
        Backend::Float => float(),
        Backend::Rational => rational(),
    }
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn read_text(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
}

fn write_text(path: &PathBuf, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
}

/// Executes a parsed command.
pub fn execute(command: Command) -> Result<Outcome> {
    let out = match command {
        Command::EvalF {
            partition,
            z,
            k,
            backend,
        } => by_backend(
            backend,
            || eval_f::<Float>(&partition, &z, k),
            || eval_f::<Rational>(&partition, &z, k),
        )?,
        Command::EvalG { n, z, k, backend } => by_backend(
            backend,
            || eval_g::<Float>(n, &z, k),
            || eval_g::<Rational>(n, &z, k),
        )?,
        Command::Series {
            k,
            z,
            nmax,
            q_bracket,
            format,
            backend,
        } => by_backend(
            backend,
            || series::<Float>(k, &z, nmax, q_bracket, format),
            || series::<Rational>(k, &z, nmax, q_bracket, format),
        )?,
        Command::Truncated {
            k2,
            z,
            n,
            decompose,
            backend,
        } => by_backend(
            backend,
            || truncated::<Float>(k2, &z, n, decompose),
            || truncated::<Rational>(k2, &z, n, decompose),
        )?,
        Command::Classical { k2, tau, terms } => {
            let tau = ParsedScalar::parse(&tau)?.to_float();
            classical_g_qexp(Weight(k2), tau, terms)?.value.to_text()
        }
        Command::Verify {
            suite,
            backend,
            config,
            out,
            no_timestamp,
        } => {
            let cfg = match &config {
                Some(path) => serde_json::from_str::<SuiteConfig>(&read_text(path)?)
                    .map_err(|e| Error::InvalidConfig(e.to_string()))?,
                None => SuiteConfig::default(),
            }
            .with_backend(backend);
            let mut report = run_suite(suite, &cfg)?;
            if !no_timestamp {
                report.stamp_now();
            }
            let text = line(report.to_json());
            let summary = format!(
                "{} suite ({}): {}/{} checks passed, max residual {:e}",
                report.suite,
                backend,
                report.summary.passed,
                report.summary.total,
                report.max_residual()
            );
            let stdout = match &out {
                Some(path) => {
                    write_text(path, &text)?;
                    None
                }
                None => Some(text),
            };
            if !report.all_passed() {
                return Ok(Outcome::Failed {
                    stdout,
                    message: summary,
                });
            }
            return Ok(match stdout {
                Some(text) => Outcome::Stdout(text),
                None => Outcome::Written(summary),
            });
        }
        Command::LatticeSvg {
            partition,
            z,
            out,
            scale,
            dot_radius,
            no_axes,
            no_diagonal,
        } => {
            let lambda = parse_partition(&partition)?;
            let z: Complex64 = parse_z::<Float>(&z)?;
            let options = SvgOptions {
                scale,
                dot_radius,
                axes: !no_axes,
                diagonal: !no_diagonal,
            };
            let svg = render_svg(&lambda, z, &options)?;
            if let Some(path) = out {
                write_text(&path, &svg)?;
                return Ok(Outcome::Written(format!("wrote {}", path.display())));
            }
            svg
        }
    };
    Ok(Outcome::Stdout(line(out)))
}

/// Applies [`THREADS_ENV`] to the global rayon pool.
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{THREADS_ENV}={value:?} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidConfig(e.to_string()))
}
