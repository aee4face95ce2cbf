//! Command-line runner for the SIH epidemic-insurance model.
//!
//! Exit codes: 0 success, 2 parse error (config text, flags), 3 validation
//! error (parameter invariants), 4 numerical error (negative state,
//! internal inconsistency, undefined quantity), 5 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sih::model::Scenario;
use sih::sensitivity::PerturbationSet;
use sih_cli::config::{self, Draft};
use sih_cli::{commands, CliError};

#[derive(Parser)]
#[command(
    name = "sih",
    version,
    about = "SIH epidemic model: stability analysis, simulation, insurance pricing, and sensitivity tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario config file (`key = value` lines); missing keys default to
    /// the shipped disease-free scenario
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for artifact files (CSV/JSON); without it, commands whose
    /// product is a file print it to stdout instead
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Override one config key, e.g. --set beta=0.003 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Perturbation fractions for sensitivity runs, e.g. --psi=-0.1,-0.05,0.05,0.1
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    psi: Option<String>,

    /// Override the step size (months; 1/dt must be a whole number)
    #[arg(long, value_name = "VALUE")]
    dt: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Stability analysis of the continuous model and its Euler map
    Analyze(ScenarioArgs),
    /// Integrate the scenario and emit the trajectory as CSV
    Simulate(ScenarioArgs),
    /// Price the scenario: premiums, profit series, start-up capital
    Price(ScenarioArgs),
    /// Sensitivity indices of R0, gross premium, capital, and end profit
    Sensitivity(ScenarioArgs),
    /// Both shipped scenarios side by side, plus their sensitivity tables
    Report(ScenarioArgs),
}

fn build_scenario(args: &ScenarioArgs, mut draft: Draft) -> Result<Scenario, CliError> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        config::apply_config(&mut draft, &text)?;
    }
    for pair in &args.set {
        let Some((key, value)) = pair.split_once('=') else {
            return Err(CliError::Parse {
                line: None,
                message: format!("--set expects KEY=VALUE, got `{pair}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let parsed: f64 = value.parse().map_err(|_| CliError::Parse {
            line: None,
            message: format!("`{value}` is not a number"),
        })?;
        draft.set(key, parsed).map_err(|_| CliError::Parse {
            line: None,
            message: format!("unknown key `{key}`"),
        })?;
    }
    if let Some(dt) = args.dt {
        draft.set_dt(dt);
    }
    draft.build()
}

fn parse_psi(args: &ScenarioArgs) -> Result<PerturbationSet, CliError> {
    match &args.psi {
        None => Ok(PerturbationSet::default()),
        Some(list) => {
            let values = list
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|_| CliError::Parse {
                    line: None,
                    message: format!("--psi expects comma-separated fractions, got `{list}`"),
                })?;
            PerturbationSet::new(values).map_err(|e| CliError::Validation(e.to_string()))
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let sc = build_scenario(&args, Draft::disease_free())?;
            commands::cmd_analyze(&sc, args.out.as_deref())
        }
        Command::Simulate(args) => {
            let sc = build_scenario(&args, Draft::disease_free())?;
            commands::cmd_simulate(&sc, args.out.as_deref())
        }
        Command::Price(args) => {
            let sc = build_scenario(&args, Draft::disease_free())?;
            commands::cmd_price(&sc, args.out.as_deref())
        }
        Command::Sensitivity(args) => {
            let sc = build_scenario(&args, Draft::disease_free())?;
            let psis = parse_psi(&args)?;
            commands::cmd_sensitivity(&sc, &psis, args.out.as_deref())
        }
        Command::Report(args) => {
            // the same file and --set overrides apply to both columns; the
            // two base drafts differ only in the incidence coefficient
            let disease_free = build_scenario(&args, Draft::disease_free())?;
            let endemic = build_scenario(&args, Draft::endemic())?;
            let psis = parse_psi(&args)?;
            commands::cmd_report(&disease_free, &endemic, &psis, args.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            if output.ends_with('\n') {
                print!("{output}");
            } else {
                println!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
