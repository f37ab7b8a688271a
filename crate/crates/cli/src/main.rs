use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use effect_logic::{scenario, selftest, tolerance};

#[derive(Parser)]
#[command(
    name = "effect-logic",
    version,
    about = "Evaluate predicate and state scenarios in the classical, stochastic and quantum instances"
)]
struct Cli {
    /// Decimal places for reals, overriding per-query settings.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Global numeric tolerance (default 1e-9).
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Seed for the randomized checks of `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { file: PathBuf },
    /// Run a bundled demo.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(scenario::DEMOS))]
        name: String,
    },
    /// Run seeded randomized law checks.
    Selftest {
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(eps) = cli.eps {
        if !(eps.is_finite() && eps > 0.0) {
            eprintln!("error: --eps must be a positive number");
            return ExitCode::from(2);
        }
        tolerance::set_eps(eps);
    }
    match cli.command {
        Command::Run { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let parsed = match scenario::parse_scenario(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let report = scenario::run(&parsed, cli.precision);
            print!("{report}");
            if report.has_errors() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Demo { name } => {
            print!(
                "{}",
                scenario::demo(&name, cli.precision).expect("name checked by the parser")
            );
            ExitCode::SUCCESS
        }
        Command::Selftest { cases } => {
            let checks = selftest::run(cli.seed, cases);
            for c in &checks {
                println!("{c}");
            }
            if checks.iter().all(selftest::Check::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
