//! Command-line front end for the two-well model: verification suites,
//! spectra, Bethe ansatz runs and ground-state curves.
//!
//! All couplings and energies share one arbitrary energy unit.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use commands::fig2::{Grid, DEFAULT_ATOMS};
use commands::verify::Suite;
use config::{OutputFormat, Overrides, Resolved, RunConfig};
pub use error::{CliError, Result};
use output::{write_file, CommandOutput};

#[derive(Debug, Parser)]
#[command(name = "twowell", version, about = "Integrable multi-level two-well boson model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebraic relations numerically.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Exact spectrum per atom number as CSV.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Solve the Bethe equations and match against exact diagonalization.
    Bae {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ground-state energy curves E0/mu1 against mu2/mu1.
    Fig2 {
        /// Range of mu2/mu1 as start:stop:step.
        #[arg(long, value_parser = Grid::parse)]
        grid: Option<Grid>,
        /// Use the Bethe ansatz instead of exact diagonalization; every grid
        /// point must pass the integrability identification.
        #[arg(long)]
        force_bae: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check whether physical couplings map onto integrable data.
    Identify {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of on-well levels for the default integrable set.
    #[arg(long = "n")]
    pub n_levels: Option<usize>,
    /// Comma-separated atom numbers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub atoms: Option<Vec<i64>>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random starts per atom number for the Bethe solver.
    #[arg(long, allow_hyphen_values = true)]
    pub budget: Option<i64>,
    /// Output file; a JSON report is written next to CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl CommonArgs {
    pub fn resolve(&self, default_atoms: &[usize]) -> Result<Resolved> {
        let config = self.config.as_deref().map(RunConfig::from_path).transpose()?;
        let ov = Overrides {
            n_levels: self.n_levels,
            atoms: self.atoms.clone(),
            seed: self.seed,
            budget: self.budget,
            out: self.out.clone(),
        };
        Resolved::new(config, &ov, default_atoms)
    }
}

/// Validates the configuration and runs the command.
pub fn execute(cmd: &Command) -> Result<(CommandOutput, Resolved)> {
    let (run, out) = match cmd {
        Command::Verify { suite, common } => {
            let run = common.resolve(&DEFAULT_ATOMS)?;
            let out = commands::cmd_verify(*suite, &run)?;
            (run, out)
        }
        Command::Spectrum { common } => {
            let run = common.resolve(&[1])?;
            let out = commands::cmd_spectrum(&run)?;
            (run, out)
        }
        Command::Bae { common } => {
            let run = common.resolve(&[1])?;
            let out = commands::cmd_bae(&run)?;
            (run, out)
        }
        Command::Fig2 {
            grid,
            force_bae,
            common,
        } => {
            let run = common.resolve(&DEFAULT_ATOMS)?;
            let out = commands::cmd_fig2(&run, &grid.unwrap_or_default(), *force_bae)?;
            (run, out)
        }
        Command::Identify { common } => {
            let run = common.resolve(&[])?;
            let out = commands::cmd_identify(&run)?;
            (run, out)
        }
    };
    Ok((out, run))
}

fn sibling_json(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// Routes a command's output.
///
/// * Tables go to `--out` (with the JSON report beside them as `.json`) or to
///   `stdout`; summary lines go to `stderr`.
/// * `verify` prints its check lines to `stdout` and writes the JSON report
///   only to `--out`.
/// * Otherwise the JSON report goes to `--out` or `stdout`.
pub fn emit(output: &CommandOutput, run: &Resolved, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    };
    let put_lines = |w: &mut dyn Write| -> Result<()> {
        for line in &output.lines {
            writeln!(w, "{line}").map_err(io)?;
        }
        Ok(())
    };
    let json = output.json.to_pretty();
    match (&output.csv, run.format, &run.out) {
        (Some(csv), OutputFormat::Csv, Some(path)) => {
            write_file(path, csv)?;
            write_file(&sibling_json(path), &json)?;
            put_lines(stderr)
        }
        (Some(csv), OutputFormat::Csv, None) => {
            stdout.write_all(csv.as_bytes()).map_err(io)?;
            put_lines(stderr)
        }
        (_, _, Some(path)) => {
            write_file(path, &json)?;
            put_lines(stdout)
        }
        (None, _, None) if output.json.command == "verify" && run.format == OutputFormat::Csv => put_lines(stdout),
        (_, _, None) => {
            stdout.write_all(json.as_bytes()).map_err(io)?;
            put_lines(stderr)
        }
    }
}

/// Runs a parsed command line end to end and returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let report = |stderr: &mut dyn Write, e: &CliError| {
        let _ = writeln!(stderr, "error: {e}");
        if let CliError::NotIntegrable(rep) = e {
            for v in &rep.violations {
                let _ = writeln!(stderr, "  violated: {} (lhs {}, rhs {})", v.constraint, v.lhs, v.rhs);
            }
        }
        e.exit_code()
    };
    let (output, resolved) = match execute(&cli.command) {
        Ok(x) => x,
        Err(e) => return report(stderr, &e),
    };
    if let Err(e) = emit(&output, &resolved, stdout, stderr) {
        return report(stderr, &e);
    }
    match &output.failure {
        Some(e) => report(stderr, e),
        None => 0,
    }
}
