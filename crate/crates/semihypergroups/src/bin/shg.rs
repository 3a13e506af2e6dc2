//! Command-line front end: every capability of the library wired to files.
//!
//! Exit codes: 0 on success, 1 when the mathematics refuses (a cube is not
//! derivable, a stream is too short, ...), 2 when inputs cannot be read or
//! parsed. `recover` still writes its JSON verdict when exiting 1, so
//! pipelines can consume the negative answer.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use semihypergroups::io::{
    analysis_to_json, check_report_json, cube_from_json, cube_to_json, derivation_report_json,
    estimated_to_json, group_from_json, group_to_json, measure_from_json, recovery_to_json,
    stream_from_text, stream_to_text,
};
use semihypergroups::rational::parse_rational;
use semihypergroups::{
    analyze_stream, by_name, estimate_cube, from_group, recover_group, simulate,
};

#[derive(Parser)]
#[command(
    name = "shg",
    about = "Convolution cubes: derive from groups, check, recover, and analyze event streams",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Cayley table of a named group as JSON
    GenGroup {
        /// Group name: Z<k>, products like Z2xZ4, or S3, D4, Q8
        #[arg(long)]
        name: String,
        /// Output file, stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the convolution cube of a (group, measure) pair
    Derive {
        /// Cayley table JSON
        #[arg(long)]
        group: PathBuf,
        /// Measure JSON
        #[arg(long)]
        measure: PathBuf,
        /// Cube JSON output, stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write a derivation report (degenerate flag, base matrix)
        #[arg(long)]
        report: Option<PathBuf>,
        /// Suppress the degeneracy note on stderr
        #[arg(long)]
        quiet: bool,
    },
    /// Run all exact checks on a cube and write the combined report
    Check {
        /// Cube JSON
        #[arg(long)]
        cube: PathBuf,
        /// Report output, stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decompose a cube into a certified (group, measure) pair
    Recover {
        /// Cube JSON
        #[arg(long)]
        cube: PathBuf,
        /// Recovery JSON output, stdout when omitted; written on failure too
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample a second-order event stream from a cube
    Simulate {
        /// Cube JSON
        #[arg(long)]
        cube: PathBuf,
        /// Start pair as two 1-based indices, e.g. 1,2
        #[arg(long)]
        start: String,
        /// Total number of events, including the start pair
        #[arg(long)]
        length: usize,
        /// Seed for the ChaCha8 generator
        #[arg(long)]
        seed: u64,
        /// Stream file output, stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate a cube from a stream by counting triples
    Estimate {
        /// Stream file (first line n=<int>, then 1-based events)
        #[arg(long)]
        stream: PathBuf,
        /// Additive smoothing constant as p/q
        #[arg(long, default_value = "0")]
        smoothing: String,
        /// Estimated-cube JSON output, stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Full pipeline: estimate, residuals, snap, exact recovery
    Analyze {
        /// Stream file
        #[arg(long)]
        stream: PathBuf,
        /// Additive smoothing constant as p/q
        #[arg(long, default_value = "0")]
        smoothing: String,
        /// Tolerance for the residual and the row/rank screen
        #[arg(long, default_value_t = 0.05)]
        assoc_tol: f64,
        /// Largest denominator tried when snapping columns
        #[arg(long, default_value_t = 12)]
        denom_bound: u64,
        /// Analysis report output, stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    /// Unreadable or unparsable inputs; exit code 2.
    Input(String),
    /// The mathematics refused; exit code 1.
    Domain(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn input<E: fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn domain<E: fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_start(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let err = || CliError::Input(format!("start must be two 1-based indices like 1,2, got {text:?}"));
    if parts.len() != 2 {
        return Err(err());
    }
    let i: usize = parts[0].trim().parse().map_err(|_| err())?;
    let j: usize = parts[1].trim().parse().map_err(|_| err())?;
    if i == 0 || j == 0 {
        return Err(err());
    }
    Ok((i - 1, j - 1))
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::GenGroup { name, output } => {
            let g = by_name(&name).map_err(input)?;
            emit(output.as_deref(), &group_to_json(&g))?;
            Ok(0)
        }
        Command::Derive {
            group,
            measure,
            output,
            report,
            quiet,
        } => {
            let g = group_from_json(&read_file(&group)?).map_err(input)?;
            let m = measure_from_json(&read_file(&measure)?).map_err(input)?;
            let result = from_group(&g, &m).map_err(domain)?;
            emit(output.as_deref(), &cube_to_json(&result.cube))?;
            if let Some(report) = report {
                emit(Some(&report), &derivation_report_json(&result))?;
            }
            if result.degenerate && !quiet {
                eprintln!("note: measure is uniform on a subgroup; the cube is degenerate");
            }
            Ok(0)
        }
        Command::Check { cube, output } => {
            let c = cube_from_json(&read_file(&cube)?).map_err(input)?;
            emit(output.as_deref(), &check_report_json(&c))?;
            Ok(0)
        }
        Command::Recover { cube, output } => {
            let c = cube_from_json(&read_file(&cube)?).map_err(input)?;
            let outcome = recover_group(&c);
            let failed = outcome.is_err();
            emit(output.as_deref(), &recovery_to_json(&outcome))?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::Simulate {
            cube,
            start,
            length,
            seed,
            output,
        } => {
            let c = cube_from_json(&read_file(&cube)?).map_err(input)?;
            let start = parse_start(&start)?;
            let stream = simulate(&c, start, length, seed).map_err(domain)?;
            emit(output.as_deref(), &stream_to_text(&stream))?;
            Ok(0)
        }
        Command::Estimate {
            stream,
            smoothing,
            output,
        } => {
            let s = stream_from_text(&read_file(&stream)?).map_err(input)?;
            let smoothing = parse_rational(&smoothing).map_err(input)?;
            let est = estimate_cube(&s, &smoothing).map_err(domain)?;
            emit(output.as_deref(), &estimated_to_json(&est))?;
            Ok(0)
        }
        Command::Analyze {
            stream,
            smoothing,
            assoc_tol,
            denom_bound,
            output,
        } => {
            let s = stream_from_text(&read_file(&stream)?).map_err(input)?;
            let smoothing = parse_rational(&smoothing).map_err(input)?;
            let report = analyze_stream(&s, &smoothing, assoc_tol, denom_bound).map_err(domain)?;
            emit(output.as_deref(), &analysis_to_json(&report))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Domain(_) => ExitCode::from(1),
            }
        }
    }
}
