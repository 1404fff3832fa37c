//! Batch front end: building queries, coefficient-system homology,
//! Deligne–Lusztig point counts and combinatorial tables.
//!
//! Exit codes: 0 success, 1 a PASS/FAIL flag failed, 2 invalid input,
//! 3 enumeration budget exhausted.

mod cmd_building;
mod cmd_dl;
mod cmd_homology;
mod cmd_tables;
mod config;
mod report;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{GlobalArgs, RunConfig};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "levelzero", version, about = "Level-zero computations for GL_d over a p-adic field")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vertices, distances, enclos and tight paths in the building
    #[command(subcommand)]
    Building(cmd_building::BuildingCmd),
    /// Homology of a coefficient system on a finite convex subcomplex
    Homology(cmd_homology::HomologyArgs),
    /// Points on the Coxeter Deligne–Lusztig variety
    #[command(subcommand)]
    Dl(cmd_dl::DlCmd),
    /// Hecke, Kostka, descent, Harris and primitive-character tables
    #[command(subcommand)]
    Tables(cmd_tables::TablesCmd),
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Report> {
    match &cli.command {
        Command::Building(c) => cmd_building::run(c, cfg),
        Command::Homology(a) => cmd_homology::run(a, cfg),
        Command::Dl(c) => cmd_dl::run(c, cfg),
        Command::Tables(c) => cmd_tables::run(c, cfg),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let budget = e.chain().any(|c| matches!(c.downcast_ref(), Some(levelzero::Error::BudgetExceeded { .. })));
    if budget {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::load(&cli.global).and_then(|cfg| {
        rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global()?;
        let report = execute(&cli, &cfg)?;
        report.emit(cfg.format, cfg.out_dir.as_deref())?;
        Ok(report.failed())
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
