//! Text, CSV, and JSON rendering of the library's reports.
//!
//! CSV values are printed with 17 significant digits so that every double
//! round-trips; the human-readable tables round the way the summary report
//! does (whole dollars with thousands separators, five decimals for
//! dimensionless quantities).

use serde_json::json;

use sih::actuarial::PricingReport;
use sih::analysis::{
    ContinuousStabilityReport, DiscreteEeVerdict, DiscreteStabilityReport, StabilityVerdict,
    DFE_THRESHOLD_NOTE,
};
use sih::model::Trajectory;
use sih::sensitivity::{ParameterId, QuantityId, SensitivityTable};

/// 17 significant digits, round-trippable.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Whole-dollar rendering with thousands separators.
pub fn money(x: f64) -> String {
    let rounded = x.round();
    let negative = rounded < 0.0;
    let digits = format!("{}", rounded.abs() as u64);
    let mut grouped = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            grouped.push(',');
        }
        grouped.push(ch);
    }
    if negative {
        format!("-{grouped}")
    } else {
        grouped
    }
}

pub fn verdict_word(v: StabilityVerdict) -> &'static str {
    match v {
        StabilityVerdict::Stable => "stable",
        StabilityVerdict::Unstable => "unstable",
        StabilityVerdict::NonHyperbolic => "non-hyperbolic",
    }
}

pub fn discrete_verdict_word(v: DiscreteEeVerdict) -> &'static str {
    match v {
        DiscreteEeVerdict::StableByCriterion => "stable (Schur-Cohn criterion)",
        DiscreteEeVerdict::StableByRoots => "stable (root check)",
        DiscreteEeVerdict::UnstableByRoots => "unstable (root check)",
        DiscreteEeVerdict::NonHyperbolicByRoots => "non-hyperbolic (root on unit circle)",
    }
}

/// `t,S,I,H,D,Dstar` with one row per grid node.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(traj.len() * 96);
    out.push_str("t,S,I,H,D,Dstar\n");
    for (n, s) in traj.states().iter().enumerate() {
        let t = n as f64 * traj.dt();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            sig17(t),
            sig17(s.susceptible),
            sig17(s.infected),
            sig17(s.hospitalised),
            sig17(s.natural_deaths),
            sig17(s.disease_deaths),
        ));
    }
    out
}

/// `month,profit_pv,asset_pv` with one row per month 0..=horizon.
pub fn financial_csv(report: &PricingReport) -> String {
    let mut out = String::with_capacity(report.profit_series.len() * 48);
    out.push_str("month,profit_pv,asset_pv\n");
    for (month, (profit, asset)) in report
        .profit_series
        .iter()
        .zip(&report.asset_series)
        .enumerate()
    {
        out.push_str(&format!("{month},{},{}\n", sig17(*profit), sig17(*asset)));
    }
    out
}

/// `parameter,R0,P_gross,Gamma,Pi_end` with one row per parameter.
pub fn sensitivity_csv(table: &SensitivityTable) -> String {
    let mut out = String::from("parameter,R0,P_gross,Gamma,Pi_end\n");
    for parameter in ParameterId::ALL {
        out.push_str(parameter.name());
        for quantity in QuantityId::ALL {
            out.push(',');
            out.push_str(&sig17(table.get(quantity, parameter).value));
        }
        out.push('\n');
    }
    out
}

fn triple(t: (f64, f64, f64)) -> String {
    format!("({:.6}, {:.6}, {:.6})", t.0, t.1, t.2)
}

/// Human-readable stability analysis, led by a one-line summary.
pub fn analysis_text(
    continuous: &ContinuousStabilityReport,
    discrete: &DiscreteStabilityReport,
) -> String {
    let mut out = String::new();
    let mut summary = format!(
        "R0 = {:.5}, DFE {}",
        continuous.r0,
        verdict_word(continuous.dfe_verdict)
    );
    if let Some(v) = continuous.ee_verdict {
        summary.push_str(match v {
            StabilityVerdict::Stable => ", EE locally asymptotically stable",
            StabilityVerdict::Unstable => ", EE unstable",
            StabilityVerdict::NonHyperbolic => ", EE non-hyperbolic",
        });
    }
    out.push_str(&summary);
    out.push_str("\n\ncontinuous model\n");
    out.push_str(&format!("  R0                    = {:.6}\n", continuous.r0));
    out.push_str(&format!(
        "  DFE (S, I, H)         = ({:.6}, {}, {})\n",
        continuous.dfe.susceptible, continuous.dfe.infected, continuous.dfe.hospitalised
    ));
    out.push_str(&format!(
        "  DFE eigenvalues       = {}\n  DFE verdict           = {}\n",
        triple(continuous.dfe_eigenvalues),
        verdict_word(continuous.dfe_verdict)
    ));
    match (&continuous.ee, continuous.rh_coefficients) {
        (Some(ee), Some(coeffs)) => {
            out.push_str(&format!(
                "  EE (S, I, H)          = ({:.6}, {:.6}, {:.6})\n",
                ee.susceptible, ee.infected, ee.hospitalised
            ));
            out.push_str(&format!(
                "  Routh-Hurwitz A1..A3  = ({:.6e}, {:.6e}, {:.6e})\n",
                coeffs.0, coeffs.1, coeffs.2
            ));
            out.push_str(&format!(
                "  margin A1*A2 - A3     = {:.6e}\n",
                continuous.rh_product_margin.unwrap_or(f64::NAN)
            ));
            out.push_str(&format!(
                "  EE verdict            = locally asymptotically {}\n",
                verdict_word(continuous.ee_verdict.expect("verdict accompanies the EE"))
            ));
        }
        _ => out.push_str("  EE                    = absent (R0 < 1)\n"),
    }
    out.push_str(&format!("\ndiscrete map (dt = {})\n", discrete.dt));
    out.push_str(&format!(
        "  DFE eigenvalues       = {}\n",
        triple(discrete.dfe_eigenvalues)
    ));
    match discrete.dfe_dt_threshold {
        Some(bound) => out.push_str(&format!(
            "  stabilising dt bound  = {bound:.6} months\n"
        )),
        None => out.push_str("  stabilising dt bound  = none (R0 >= 1)\n"),
    }
    out.push_str(&format!("  note: {DFE_THRESHOLD_NOTE}\n"));
    out.push_str(&format!(
        "  DFE verdict           = {}\n",
        verdict_word(discrete.dfe_verdict)
    ));
    match (discrete.ee_coefficients, &discrete.schur_cohn, discrete.ee_verdict) {
        (Some(coeffs), Some(sc), Some(verdict)) => {
            out.push_str(&format!(
                "  EE coefficients       = ({:.9}, {:.9}, {:.9})\n",
                coeffs.0, coeffs.1, coeffs.2
            ));
            out.push_str(&format!(
                "  Schur-Cohn conditions = 1+A1+A2+A3 = {:.6e}, 1-A1+A2-A3 = {:.6e}, (1-A3^2)-|A2-A1*A3| = {:.6e}\n",
                sc.cond_plus, sc.cond_minus, sc.cond_inner
            ));
            out.push_str(&format!(
                "  EE verdict            = {}\n",
                discrete_verdict_word(verdict)
            ));
        }
        _ => out.push_str("  EE                    = absent (R0 <= 1)\n"),
    }
    out
}

/// Machine-readable analysis payload.
pub fn analysis_json(
    continuous: &ContinuousStabilityReport,
    discrete: &DiscreteStabilityReport,
) -> serde_json::Value {
    json!({
        "continuous": {
            "r0": continuous.r0,
            "dfe": {
                "S": continuous.dfe.susceptible,
                "I": continuous.dfe.infected,
                "H": continuous.dfe.hospitalised,
            },
            "dfe_eigenvalues": [
                continuous.dfe_eigenvalues.0,
                continuous.dfe_eigenvalues.1,
                continuous.dfe_eigenvalues.2,
            ],
            "dfe_verdict": verdict_word(continuous.dfe_verdict),
            "ee": continuous.ee.map(|ee| json!({
                "S": ee.susceptible,
                "I": ee.infected,
                "H": ee.hospitalised,
            })),
            "rh_coefficients": continuous.rh_coefficients.map(|c| json!([c.0, c.1, c.2])),
            "rh_product_margin": continuous.rh_product_margin,
            "ee_verdict": continuous.ee_verdict.map(verdict_word),
        },
        "discrete": {
            "dt": discrete.dt,
            "dfe_eigenvalues": [
                discrete.dfe_eigenvalues.0,
                discrete.dfe_eigenvalues.1,
                discrete.dfe_eigenvalues.2,
            ],
            "dfe_dt_threshold": discrete.dfe_dt_threshold,
            "dfe_threshold_note": DFE_THRESHOLD_NOTE,
            "dfe_verdict": verdict_word(discrete.dfe_verdict),
            "ee_coefficients": discrete.ee_coefficients.map(|c| json!([c.0, c.1, c.2])),
            "schur_cohn": discrete.schur_cohn.as_ref().map(|sc| json!({
                "cond_plus": sc.cond_plus,
                "cond_minus": sc.cond_minus,
                "cond_inner": sc.cond_inner,
            })),
            "ee_verdict": discrete.ee_verdict.map(discrete_verdict_word),
        },
    })
}

/// Human-readable pricing summary for one scenario.
pub fn pricing_text(report: &PricingReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "net premium            = {:.2} $/individual/month\n",
        report.net_premium
    ));
    out.push_str(&format!(
        "gross premium          = {:.2} $/individual/month ({} rounded)\n",
        report.gross_premium,
        money(report.gross_premium)
    ));
    out.push_str(&format!(
        "premium base           = {} $\n",
        money(report.premium_base)
    ));
    out.push_str(&format!(
        "total benefit PV       = {} $\n",
        money(report.total_benefit_pv)
    ));
    out.push_str(&format!(
        "minimum profit         = {} $ at month {}\n",
        money(report.minimum_profit),
        report.minimum_profit_month
    ));
    if report.capital_required {
        out.push_str(&format!(
            "start-up capital       = {} $\n",
            money(report.startup_capital)
        ));
    } else {
        out.push_str("start-up capital       = 0 $ (no loss month; none required)\n");
    }
    out.push_str(&format!(
        "end-of-period profit   = {} $\n",
        money(report.end_profit)
    ));
    match report.profit_percentage {
        Some(pct) => out.push_str(&format!("profit percentage      = {pct:.5}%\n")),
        None => out.push_str("profit percentage      = not applicable (no capital allocated)\n"),
    }
    out
}

/// One scenario column of the side-by-side report.
pub struct ScenarioColumn {
    pub label: &'static str,
    pub beta: f64,
    pub r0: f64,
    pub limit: (f64, f64, f64),
    pub pricing: PricingReport,
    pub sensitivity: SensitivityTable,
}

/// The side-by-side summary plus one sensitivity table per scenario.
pub fn report_text(columns: &[ScenarioColumn]) -> String {
    let mut out = String::new();
    let width = 16usize;
    out.push_str(&format!("{:<44}", "quantity"));
    for c in columns {
        out.push_str(&format!("{:>width$}", c.label));
    }
    out.push_str("  unit\n");
    let mut row = |name: &str, values: Vec<String>, unit: &str| {
        out.push_str(&format!("{name:<44}"));
        for v in values {
            out.push_str(&format!("{v:>width$}"));
        }
        out.push_str(&format!("  {unit}\n"));
    };
    row(
        "incidence coefficient (beta)",
        columns.iter().map(|c| format!("{:.5}", c.beta)).collect(),
        "1/(individual*month)",
    );
    row(
        "basic reproduction number (R0)",
        columns.iter().map(|c| format!("{:.5}", c.r0)).collect(),
        "-",
    );
    row(
        "limiting susceptible count (S_inf)",
        columns.iter().map(|c| money(c.limit.0)).collect(),
        "individual",
    );
    row(
        "limiting infected count (I_inf)",
        columns.iter().map(|c| money(c.limit.1)).collect(),
        "individual",
    );
    row(
        "limiting hospitalised count (H_inf)",
        columns.iter().map(|c| money(c.limit.2)).collect(),
        "individual",
    );
    row(
        "monthly gross premium (P_gross)",
        columns.iter().map(|c| money(c.pricing.gross_premium)).collect(),
        "$/individual",
    );
    row(
        "minimum profit present value (Pi_min)",
        columns.iter().map(|c| money(c.pricing.minimum_profit)).collect(),
        "$",
    );
    row(
        "month of minimum profit (t_min)",
        columns
            .iter()
            .map(|c| c.pricing.minimum_profit_month.to_string())
            .collect(),
        "month",
    );
    row(
        "minimum start-up capital (Gamma)",
        columns.iter().map(|c| money(c.pricing.startup_capital)).collect(),
        "$",
    );
    row(
        "end-of-period profit (Pi_end)",
        columns.iter().map(|c| money(c.pricing.end_profit)).collect(),
        "$",
    );
    row(
        "profit percentage (pi)",
        columns
            .iter()
            .map(|c| match c.pricing.profit_percentage {
                Some(pct) => format!("{pct:.5}%"),
                None => "n/a".to_string(),
            })
            .collect(),
        "-",
    );

    for c in columns {
        out.push_str(&format!(
            "\nsensitivity indices, {} scenario (mean of relative-change ratios over the nonzero perturbations)\n",
            c.label
        ));
        out.push_str(&format!(
            "{:<14}{:>12}{:>12}{:>12}{:>12}\n",
            "parameter", "R0", "P_gross", "Gamma", "Pi_end"
        ));
        let mut any_flag = false;
        for parameter in ParameterId::ALL {
            out.push_str(&format!("{:<14}", parameter.name()));
            for quantity in QuantityId::ALL {
                let cell = c.sensitivity.get(quantity, parameter);
                let marker = if cell.trough_month_moved { "*" } else { "" };
                any_flag |= cell.trough_month_moved;
                out.push_str(&format!("{:>12}", format!("{:.5}{marker}", cell.value)));
            }
            out.push('\n');
        }
        if any_flag {
            out.push_str(
                "* the trough month of the profit series moved under this perturbation; \
the capital index is a finite-difference estimate across a non-smooth point\n",
            );
        }
    }
    out
}
