use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gauge_cli::commands;
use gauge_cli::report::{Report, EXIT_USAGE};
use gauge_cli::Scenario;
use gauge_core::error::{Error, Result};
use gauge_core::ordered::parse_rational64;
use gauge_core::props::Suite;

#[derive(Parser)]
#[command(name = "gauge", version, about = "Check gauges on algebras over valued fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every gauge block of a scenario.
    Check {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the graded presentation of every gauge block.
    Gr {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count extensions of the valuation for every extension block.
    Extensions {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check of a scenario, including ring checks.
    Report {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the battery on the bundled rank-2 quaternion example.
    Example51 {
        #[arg(long, default_value = "1/4")]
        gamma: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the seeded property suites.
    Props {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn scenario_command(file: &std::path::Path, f: fn(&Scenario) -> Report) -> Result<Report> {
    Ok(f(&Scenario::load(file)?))
}

fn run(cmd: Command) -> Result<(Report, Option<PathBuf>)> {
    Ok(match cmd {
        Command::Check { file, out } => (scenario_command(&file, commands::check)?, out),
        Command::Gr { file, out } => (scenario_command(&file, commands::gr)?, out),
        Command::Extensions { file, out } => (scenario_command(&file, commands::extensions)?, out),
        Command::Report { file, out } => (scenario_command(&file, commands::full_report)?, out),
        Command::Example51 { gamma, samples, seed, out } => (commands::example51(parse_rational64(&gamma)?, samples, seed)?, out),
        Command::Props { suite, seed, out } => (commands::props(suite.parse::<Suite>()?, seed)?, out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, out)) => {
            print!("{}", report.table());
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, report.to_json()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            let code = match &e {
                Error::Invalid(_) => EXIT_USAGE,
                other => commands::exit_code_for(other),
            };
            ExitCode::from(code as u8)
        }
    }
}
