use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lieherm_cli::catalog::{catalog, lookup};
use lieherm_cli::run::{cmd_check, cmd_solve, RunOptions, RunReport};
use lieherm_cli::config::{parse_config, SpaceEntry};
use lieherm_cli::theorem::{cmd_theorem, THEOREMS};
use lieherm_cli::{cmd_experiment, render, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "lieherm", version, about = "Bismut torsion-parallel checks on Lie groups and flag manifolds")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Floating cross-check tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Maximum number of disjunctions the solvers branch on.
    #[arg(long, global = true)]
    solver_cap: Option<usize>,
    /// Random metrics sampled by the solvers.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every space in a config file, `catalog:NAME` or `catalog:all`.
    Check { source: String },
    /// Solve the BTP equations over invariant metrics for each space.
    Solve { source: String },
    /// List the built-in catalog.
    Catalog,
    /// Run a scripted verification bundle; `list` prints the ids.
    Theorem { id: String },
    /// Exploratory runs.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Pull the canonical metric back by a Killing reflection.
    BIsometry {
        #[arg(long, default_value = "A1")]
        cartan: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn load(source: &str) -> Result<Vec<SpaceEntry>, CliError> {
    match source.strip_prefix("catalog:") {
        Some("all") => Ok(catalog().into_iter().map(|c| c.entry).collect()),
        Some(name) => lookup(name)
            .map(|c| vec![c.entry])
            .ok_or_else(|| CliError::Usage(format!("no catalog entry {name:?}"))),
        None => {
            let path = PathBuf::from(source);
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io { path: source.to_string(), source: e })?;
            parse_config(&text)
        }
    }
}

fn run(cli: &Cli) -> Result<Option<RunReport>, CliError> {
    let d = RunOptions::default();
    let opts = RunOptions {
        tolerance: cli.tolerance,
        solver_cap: cli.solver_cap.unwrap_or(d.solver_cap),
        samples: cli.samples.unwrap_or(d.samples),
    };
    if let Some(t) = opts.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Check { source } => cmd_check(&load(source)?, &opts).map(Some),
        Command::Solve { source } => cmd_solve(&load(source)?, &opts).map(Some),
        Command::Catalog => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&catalog()).expect("catalog serializes")),
                Format::Text => {
                    for c in catalog() {
                        println!("{:28} {}", c.entry.name.unwrap_or_default(), c.description);
                    }
                }
            }
            Ok(None)
        }
        Command::Theorem { id } if id == "list" => {
            for (k, d) in THEOREMS {
                println!("{k:18} {d}");
            }
            Ok(None)
        }
        Command::Theorem { id } => cmd_theorem(id, &opts).map(Some),
        Command::Experiment { which: Experiment::BIsometry { cartan, seed } } => cmd_experiment(cartan, *seed).map(Some),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            match cli.format {
                Format::Json => println!("{}", render::json(&report)),
                Format::Text => print!("{}", render::text(&report)),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::EXIT_CODE as u8)
        }
    }
}
