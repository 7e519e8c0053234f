use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use flopslope::catalog::{describe, Catalog};
use flopslope::run::{run_file, Overrides};
use flopslope::{golden, CliError};

#[derive(Parser)]
#[command(name = "flopslope", version, about = "Exact slope and flop-slope instability tests for log del Pezzo pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job file and write its report (and CSV samples for a grid).
    Run {
        job: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Sample the cone angle on lo:hi:step.
        #[arg(long)]
        grid: Option<String>,
        /// Value of gamma for the maeda and theorem pipelines, as p/q.
        #[arg(long)]
        gamma: Option<String>,
        /// Comma-separated values of D'.C_i.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        override_dprime: Option<Vec<String>>,
    },
    /// Inspect the surface catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Recompute the reference values and print a pass/fail table.
    VerifyExamples,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

fn dprime_values(raw: &[String]) -> Result<Vec<i64>, CliError> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            s.trim()
                .parse()
                .map_err(|_| CliError::parse(format!("/dprime_override/{i}"), format!("`{s}` is not an integer")))
        })
        .collect()
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Run { job, out, grid, gamma, override_dprime } => {
            let dprime = override_dprime.as_deref().map(dprime_values).transpose()?;
            let overrides = Overrides { grid, gamma, dprime };
            let outcome = run_file(&job, &out, &overrides, &Catalog::from_env()?)?;
            println!("verdict: {}", outcome.verdict);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { action: CatalogAction::List } => {
            let cat = Catalog::from_env()?;
            let width = cat.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
            for e in &cat.entries {
                let family = e.family.as_ref().map(|f| format!(" (r = {}..{})", f.min, f.max)).unwrap_or_default();
                println!("{:<width$}  {}{family}", e.name, e.description);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { action: CatalogAction::Show { name } } => {
            let members = Catalog::from_env()?.members_of(&name)?;
            let dumps = members.iter().map(describe).collect::<Result<Vec<_>, _>>()?;
            print!("{}", dumps.join("\n"));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyExamples => {
            let checks = golden::run_all();
            print!("{}", golden::table(&checks));
            Ok(if checks.iter().all(|c| c.pass) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
