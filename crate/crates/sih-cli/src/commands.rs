//! The five subcommand implementations. Each returns the text destined for
//! stdout; artifact files are written only when an output directory is
//! given.

use std::fs;
use std::path::Path;

use sih::actuarial::{price_trajectory, PricingReport};
use sih::analysis::{basic_reproduction_number, continuous_report, discrete_report};
use sih::model::{Scenario, Trajectory};
use sih::sensitivity::{sensitivity_table, PerturbationSet, SensitivityTable};
use sih::simulator::simulate;

use crate::config::emit_config;
use crate::render::{
    analysis_json, analysis_text, financial_csv, pricing_text, report_text, sensitivity_csv,
    trajectory_csv, ScenarioColumn,
};
use crate::CliError;

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn cmd_analyze(sc: &Scenario, out: Option<&Path>) -> Result<String, CliError> {
    let continuous = continuous_report(sc.epidemic())?;
    let discrete = discrete_report(sc.epidemic(), sc.policy().dt)?;
    if let Some(dir) = out {
        let payload = analysis_json(&continuous, &discrete);
        let pretty = serde_json::to_string_pretty(&payload)
            .map_err(|e| CliError::Io(e.to_string()))?;
        write_file(dir, "analysis.json", &pretty)?;
    }
    Ok(analysis_text(&continuous, &discrete))
}

pub fn cmd_simulate(sc: &Scenario, out: Option<&Path>) -> Result<String, CliError> {
    let traj = simulate(sc)?;
    let csv = trajectory_csv(&traj);
    match out {
        Some(dir) => {
            write_file(dir, "trajectory.csv", &csv)?;
            // record the resolved inputs next to the artifact
            write_file(dir, "scenario.conf", &emit_config(sc))?;
            Ok(format!("wrote {}", dir.join("trajectory.csv").display()))
        }
        None => Ok(csv),
    }
}

pub fn cmd_price(sc: &Scenario, out: Option<&Path>) -> Result<String, CliError> {
    let traj = simulate(sc)?;
    let report = price_trajectory(&traj, sc.policy())?;
    if let Some(dir) = out {
        write_file(dir, "profit_asset.csv", &financial_csv(&report))?;
        write_file(dir, "scenario.conf", &emit_config(sc))?;
    }
    Ok(pricing_text(&report))
}

pub fn cmd_sensitivity(
    sc: &Scenario,
    psis: &PerturbationSet,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let table = sensitivity_table(sc, psis)?;
    let csv = sensitivity_csv(&table);
    match out {
        Some(dir) => {
            write_file(dir, "sensitivity.csv", &csv)?;
            Ok(format!("wrote {}", dir.join("sensitivity.csv").display()))
        }
        None => Ok(csv),
    }
}

struct ScenarioBundle {
    column: ScenarioColumn,
    trajectory: Trajectory,
}

fn run_scenario(
    label: &'static str,
    sc: &Scenario,
    psis: &PerturbationSet,
) -> Result<ScenarioBundle, CliError> {
    let trajectory = simulate(sc)?;
    let pricing: PricingReport = price_trajectory(&trajectory, sc.policy())?;
    let sensitivity: SensitivityTable = sensitivity_table(sc, psis)?;
    let last = trajectory.at_month(sc.policy().horizon);
    Ok(ScenarioBundle {
        column: ScenarioColumn {
            label,
            beta: sc.epidemic().beta,
            r0: basic_reproduction_number(sc.epidemic()),
            limit: (last.susceptible, last.infected, last.hospitalised),
            pricing,
            sensitivity,
        },
        trajectory,
    })
}

pub fn cmd_report(
    disease_free: &Scenario,
    endemic: &Scenario,
    psis: &PerturbationSet,
    out: Option<&Path>,
) -> Result<String, CliError> {
    // the two scenario pipelines are pure and independent; run them on
    // separate threads
    let (left, right) = std::thread::scope(|scope| {
        let left = scope.spawn(|| run_scenario("disease-free", disease_free, psis));
        let right = scope.spawn(|| run_scenario("endemic", endemic, psis));
        (
            left.join().expect("scenario pipeline does not panic"),
            right.join().expect("scenario pipeline does not panic"),
        )
    });
    let (left, right) = (left?, right?);
    if let Some(dir) = out {
        for (prefix, bundle) in [("disease_free", &left), ("endemic", &right)] {
            write_file(
                dir,
                &format!("{prefix}_trajectory.csv"),
                &trajectory_csv(&bundle.trajectory),
            )?;
            write_file(
                dir,
                &format!("{prefix}_profit_asset.csv"),
                &financial_csv(&bundle.column.pricing),
            )?;
            write_file(
                dir,
                &format!("{prefix}_sensitivity.csv"),
                &sensitivity_csv(&bundle.column.sensitivity),
            )?;
        }
    }
    Ok(report_text(&[left.column, right.column]))
}
