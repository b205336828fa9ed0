use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod config;
mod error;
mod inspect;
mod run;

use error::CliError;

/// Localization experiments on compactified band models.
#[derive(Debug, Parser)]
#[command(name = "gloc", version)]
struct Cli {
    /// Output directory; overrides the config and `GLOC_OUT_DIR`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Probe seed; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Threads for dense linear algebra.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run { config: PathBuf },
    /// Summarize a model file or a groupoid file.
    Inspect { model: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    gloc::set_threads(cli.threads);
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Inspect { model } => {
            print!("{}", inspect::inspect(model)?);
            Ok(())
        }
        Command::Run { config } => {
            let loaded = config::load(config)?;
            let out = cli
                .out
                .clone()
                .or_else(|| std::env::var_os("GLOC_OUT_DIR").map(PathBuf::from))
                .or_else(|| loaded.config.output.as_ref().map(|o| config.parent().unwrap_or(".".as_ref()).join(o)))
                .unwrap_or_else(|| PathBuf::from("gloc-out"));
            let seed = cli.seed.unwrap_or(loaded.config.probes.seed);
            let summary = run::run(&loaded, seed, &out)?;
            for r in &summary.reports {
                println!("{}", r.csv_row());
            }
            println!("wrote {} and {}", summary.csv.display(), summary.json.display());
            Ok(())
        }
    }
}
