use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sturmlab::experiments::{
    cmd_cf_analysis, cmd_complexity, cmd_dependent_bases, cmd_sunit, CfOptions, ExperimentError, DEFAULT_GUARD,
};
use sturmlab::{Number, NumberSpec};

/// Block complexity, return times and rational approximation of digit words.
///
/// Exit status: 0 on success, 1 on other errors (including a failed bound
/// check), 2 when the prefix is too short to certify the request, 3 for an
/// invalid number spec.
#[derive(Parser)]
#[command(name = "sturmlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct NumberArgs {
    /// Number spec as inline JSON or a path to a JSON file.
    #[arg(long)]
    spec: String,
    /// Override the seed of a random spec.
    #[arg(long)]
    seed: Option<u64>,
    /// Digits drawn in the spec's native base (or per base for rationals).
    #[arg(long, short = 'L', default_value_t = 10_000)]
    prefix: usize,
}

#[derive(clap::Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// p(n) and r(n) per base and D(n) = sum p(n) - 2n.
    Complexity {
        #[command(flatten)]
        number: NumberArgs,
        /// Comma-separated bases.
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        bases: Vec<u32>,
        #[arg(long, default_value_t = 150)]
        nmax: usize,
        /// Base-conversion digits discarded as a safety margin.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// D(n) for two multiplicatively dependent bases against m + l.
    Dependent {
        #[command(flatten)]
        number: NumberArgs,
        /// The two bases, e.g. 2,4.
        #[arg(long, value_delimiter = ',', num_args = 1, default_values_t = [2u32, 4])]
        bases: Vec<u32>,
        #[arg(long, default_value_t = 150)]
        nmax: usize,
        /// Start of the range where the bound is checked.
        #[arg(long, default_value_t = 20)]
        tail: usize,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Certified continued fraction, good convergents and their shapes.
    Cf {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, short = 'b', default_value_t = 2)]
        base: u32,
        /// Base-b digits analysed.
        #[arg(long, short = 'L', default_value_t = 400)]
        prefix: usize,
        /// Convergents with q below this are exempt from the shape law.
        #[arg(long, default_value_t = 100)]
        cutoff_q: u64,
        /// n_max of the quasi-Sturmian fit (default: prefix / 5).
        #[arg(long)]
        fit_nmax: Option<usize>,
        /// Largest s tried in q = b^r (b^s - 1) / m.
        #[arg(long)]
        s_max: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Bounded search of (m2/m1)(r^z1 - r^z2) s^-z4 + s^z3 = 1.
    Sunit {
        #[arg(long, default_value_t = 1)]
        m1: u64,
        #[arg(long, default_value_t = 1)]
        m2: u64,
        /// The two bases r,s.
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        bases: Vec<u64>,
        #[arg(long, default_value_t = 25)]
        zmax: u32,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Experiment(ExperimentError),
    Other(String),
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        Failure::Experiment(e)
    }
}

fn load_number(spec: &str, seed: Option<u64>) -> Result<Number, Failure> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec)
            .map_err(|e| ExperimentError::InvalidSpec(format!("cannot read {spec}: {e}")))?
    };
    let mut spec = NumberSpec::from_json(&text)?;
    if let (NumberSpec::Random { seed: s, .. }, Some(seed)) = (&mut spec, seed) {
        *s = seed;
    }
    Ok(Number::from_spec(&spec)?)
}

fn two_bases<T: Copy>(bases: &[T]) -> Result<(T, T), Failure> {
    match bases {
        [r, s] => Ok((*r, *s)),
        _ => Err(Failure::Other(format!("expected exactly two bases, got {}", bases.len()))),
    }
}

fn emit(output: &Output, body: &str) -> Result<(), Failure> {
    let result = match &output.out {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    result.map_err(|e| Failure::Other(e.to_string()))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialises");
    text.push('\n');
    text
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Complexity {
            number,
            bases,
            nmax,
            guard,
            format,
            output,
        } => {
            let mut x = load_number(&number.spec, number.seed)?;
            let report = cmd_complexity(&mut x, &bases, nmax, number.prefix, guard)?;
            if report.certified_n_max < nmax {
                eprintln!("note: rows certified only up to n = {}", report.certified_n_max);
            }
            let body = match format {
                Format::Csv => report.to_csv(),
                Format::Json => json(&report),
            };
            emit(&output, &body)
        }
        Command::Dependent {
            number,
            bases,
            nmax,
            tail,
            guard,
            format,
            output,
        } => {
            let (r, s) = two_bases(&bases)?;
            let mut x = load_number(&number.spec, number.seed)?;
            let report = cmd_dependent_bases(&mut x, r, s, nmax, number.prefix, tail, guard)?;
            let body = match format {
                Format::Csv => report.table.to_csv(),
                Format::Json => json(&report),
            };
            emit(&output, &body)?;
            if report.holds {
                Ok(())
            } else {
                Err(Failure::Other(format!(
                    "D(n) < {} at n = {:?}",
                    report.lower_bound, report.violations
                )))
            }
        }
        Command::Cf {
            spec,
            seed,
            base,
            prefix,
            cutoff_q,
            fit_nmax,
            s_max,
            output,
        } => {
            let mut x = load_number(&spec, seed)?;
            let options = CfOptions {
                q_cutoff: cutoff_q.into(),
                fit_n_max: fit_nmax,
                s_max,
            };
            let report = cmd_cf_analysis(&mut x, base, prefix, &options)?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            emit(&output, &json(&report))
        }
        Command::Sunit {
            m1,
            m2,
            bases,
            zmax,
            output,
        } => {
            let (r, s) = two_bases(&bases)?;
            let report = cmd_sunit(m1, m2, r, s, zmax)?;
            emit(&output, &json(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Experiment(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
