use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plv_cli::{commands, config, CliError, Reason};

#[derive(Parser)]
#[command(name = "plv", version, about = "Angular power spectrum recovery from ULA covariance lags")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Compute covariance lags of the configured spectrum.
    Synthesize(Common),
    /// Recover the spectrum from a lags CSV.
    Recover {
        #[command(flatten)]
        common: Common,
        /// Lags CSV with header m,re,im.
        #[arg(long)]
        lags: PathBuf,
    },
    /// Error certificate for the configured spectrum.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated antenna counts, e.g. 2,4,8.
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Write the Gram blocks and their conditioning.
    Gram(Common),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Synthesize(c) => commands::synthesize(&config::load(&c.config)?, &c.out),
        Command::Recover { common, lags } => commands::recover(&config::load(&common.config)?, &lags, &common.out),
        Command::Certify { common, sweep } => {
            commands::certify(&config::load(&common.config)?, sweep.as_deref(), &common.out)
        }
        Command::Gram(c) => commands::gram(&config::load(&c.config)?, &c.out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.to_string();
            let summary: Vec<&str> = detail
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty() && !l.starts_with("tip:"))
                .collect();
            let summary = summary.join(" ");
            let summary = summary.trim_start_matches("error: ");
            eprintln!("{}", CliError::new(Reason::Config, format!("usage: {summary}")).render());
            return ExitCode::from(Reason::Config.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.reason.exit_code() as u8)
        }
    }
}
