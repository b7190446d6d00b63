use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twoqubit_cli::analyze::analyze_text;
use twoqubit_cli::survey::{run_survey, write_samples};
use twoqubit_cli::teleport::teleport_sim;
use twoqubit_cli::{geometry, json, CliError};
use twoqubit_core::sampling::DEFAULT_SEED;
use twoqubit_core::{Alpha, Averaging};

/// Two-qubit state analysis: separability, entropy inequalities and
/// teleportation fidelity.
#[derive(Debug, Parser)]
#[command(name = "twoqubit", version)]
struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report for one state file.
    Analyze {
        statefile: PathBuf,
        /// Comma-separated orders, `inf` allowed.
        #[arg(long, value_delimiter = ',', default_values_t = Alpha::default_scan())]
        alphas: Vec<Alpha>,
    },
    /// Criterion statistics over uniformly sampled Bell spectra.
    Survey {
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        /// `json` prints the summary; `csv` writes one row per sample to
        /// `--out` and prints the summary.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tetrahedron, octahedron and Werner-line mesh.
    Geometry,
    /// Simulated teleportation fidelity through the state as a channel.
    TeleportSim {
        statefile: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        /// Monte-Carlo sample count.
        #[arg(long, default_value_t = 100_000)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    MonteCarlo,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let text = json::to_string(value);
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Analyze { statefile, alphas } => emit(out, &analyze_text(&read(&statefile)?, &alphas)?),
        Command::Survey { n, format } => {
            let summary = run_survey(n, cli.seed)?;
            match format {
                Format::Json => emit(out, &summary),
                Format::Csv => {
                    let path = out.ok_or_else(|| CliError::Input("--format csv needs --out".into()))?;
                    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
                    write_samples(io::BufWriter::new(file), n, cli.seed)
                        .map_err(|e| CliError::io(path, io::Error::other(e)))?;
                    emit(None, &summary)
                }
            }
        }
        Command::Geometry => emit(out, &geometry::mesh()),
        Command::TeleportSim { statefile, method, n } => {
            let averaging = match method {
                MethodArg::Exact => Averaging::ExactDesign,
                MethodArg::MonteCarlo => Averaging::MonteCarlo { n, seed: cli.seed },
            };
            emit(out, &teleport_sim(&read(&statefile)?, averaging)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
