//! Actuarial quantities built on a simulated trajectory: annuity-weighted
//! premium base, benefit present values, net and gross premium via the
//! equivalence principle, monthly profit series, minimum loss-preventing
//! start-up capital, asset series, and end-of-period profit percentage.
//!
//! All sums run over integer months, indexing the trajectory at exact grid
//! nodes (no interpolation), and accumulate in double precision in
//! increasing-month order. Nothing is rounded internally; display rounding
//! belongs to the presentation layer. Compensated summation is not needed
//! at a 500-month horizon; revisit if horizons grow by orders of magnitude.

use crate::error::Error;
use crate::model::{PolicyParams, Scenario, Trajectory};
use crate::simulator::simulate;

/// Everything the pricing pipeline produces for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct PricingReport {
    /// Monthly net premium per susceptible-or-infected individual, $.
    pub net_premium: f64,
    /// Monthly gross premium `(1 + omega + phi) * net`, $.
    pub gross_premium: f64,
    /// Present value of one premium unit paid by every susceptible or
    /// infected individual at the start of each month, $.
    pub premium_base: f64,
    /// Present value of all benefits over the whole period, $.
    pub total_benefit_pv: f64,
    /// Present value of cumulative profit at the end of months 0..=horizon, $.
    pub profit_series: Vec<f64>,
    /// Minimum of the profit series, $.
    pub minimum_profit: f64,
    /// Month at which the minimum is attained (smallest index on ties).
    pub minimum_profit_month: u32,
    /// Start-up capital preventing the worst loss, stated as a present
    /// value at time 0: `-minimum_profit * v^minimum_profit_month`. Zero
    /// when no loss occurs, $.
    pub startup_capital: f64,
    /// False when the profit series never goes negative, so no start-up
    /// capital is needed.
    pub capital_required: bool,
    /// Insurer's fund at the end of months 0..=horizon, $. See
    /// [`capital_and_percentage`] for the valuation convention.
    pub asset_series: Vec<f64>,
    /// Final profit-series entry; equals `phi * total_benefit_pv` by the
    /// equivalence principle, $.
    pub end_profit: f64,
    /// End profit as a percentage of the start-up capital; `None` when no
    /// capital is required.
    pub profit_percentage: Option<f64>,
}

/// Capital and asset figures derived from a profit series.
#[derive(Debug, Clone, PartialEq)]
pub struct CapitalSummary {
    pub minimum_profit: f64,
    pub minimum_profit_month: u32,
    pub startup_capital: f64,
    pub capital_required: bool,
    pub asset_series: Vec<f64>,
    pub end_profit: f64,
    pub profit_percentage: Option<f64>,
}

fn check_grid(traj: &Trajectory, pol: &PolicyParams) -> Result<(), Error> {
    let expected = pol.total_steps() + 1;
    if traj.len() != expected || traj.steps_per_month() != pol.steps_per_month() {
        return Err(Error::GridMismatch {
            expected,
            actual: traj.len(),
        });
    }
    Ok(())
}

/// Present value of one premium unit collected from every susceptible or
/// infected individual at the beginning of each month:
/// `sum_{t=0}^{T-1} v^t (S_t + I_t)`. Hospitalised individuals pay no
/// premium.
pub fn premium_base(traj: &Trajectory, pol: &PolicyParams) -> Result<f64, Error> {
    check_grid(traj, pol)?;
    let v = pol.discount_factor();
    let mut sum = 0.0;
    let mut discount = 1.0;
    for month in 0..pol.horizon {
        let s = traj.at_month(month);
        sum += discount * (s.susceptible + s.infected);
        discount *= v;
    }
    Ok(sum)
}

/// Present value of all benefits granted through the end of
/// `through_month`: the monthly hospitalisation benefit on the
/// end-of-month head count, plus the one-time death benefits on the
/// monthly increments of the two cumulative death counters.
///
/// Panics if `through_month` exceeds the policy horizon.
pub fn total_benefit_pv(
    traj: &Trajectory,
    pol: &PolicyParams,
    through_month: u32,
) -> Result<f64, Error> {
    check_grid(traj, pol)?;
    assert!(
        through_month <= pol.horizon,
        "through_month {through_month} exceeds the policy horizon {}",
        pol.horizon
    );
    let v = pol.discount_factor();
    let mut sum = 0.0;
    let mut discount = 1.0;
    let mut prev = traj.at_month(0);
    for month in 1..=through_month {
        let cur = traj.at_month(month);
        discount *= v;
        sum += discount
            * (pol.benefit_hospital * cur.hospitalised
                + pol.benefit_natural_death * (cur.natural_deaths - prev.natural_deaths)
                + pol.benefit_disease_death * (cur.disease_deaths - prev.disease_deaths));
        prev = cur;
    }
    Ok(sum)
}

/// Monthly net premium from the equivalence principle: total benefit
/// present value divided by the premium base.
pub fn net_premium(traj: &Trajectory, pol: &PolicyParams) -> Result<f64, Error> {
    let base = premium_base(traj, pol)?;
    if base == 0.0 {
        return Err(Error::DegenerateBase);
    }
    Ok(total_benefit_pv(traj, pol, pol.horizon)? / base)
}

/// Gross premium: net premium loaded with the operational-cost and profit
/// surcharges.
pub fn gross_premium(net: f64, pol: &PolicyParams) -> f64 {
    (1.0 + pol.omega + pol.phi) * net
}

/// Present value of cumulative profit at the end of each month 0..=horizon.
/// Entry 0 is 0 by definition; entry t is gross premium income minus
/// operational costs minus benefits, which collapses to
/// `(1 + phi) * net * sum_{tau<t} v^tau (S+I) - benefits(t)` since the
/// omega loading cancels against the operational costs.
pub fn profit_series(
    traj: &Trajectory,
    pol: &PolicyParams,
    net: f64,
) -> Result<Vec<f64>, Error> {
    check_grid(traj, pol)?;
    let v = pol.discount_factor();
    let mut series = Vec::with_capacity(pol.horizon as usize + 1);
    series.push(0.0);
    let mut premium_partial = 0.0;
    let mut benefit_partial = 0.0;
    let mut premium_discount = 1.0;
    let mut benefit_discount = 1.0;
    let mut prev = traj.at_month(0);
    for month in 1..=pol.horizon {
        let payer = traj.at_month(month - 1);
        premium_partial += premium_discount * (payer.susceptible + payer.infected);
        premium_discount *= v;
        let cur = traj.at_month(month);
        benefit_discount *= v;
        benefit_partial += benefit_discount
            * (pol.benefit_hospital * cur.hospitalised
                + pol.benefit_natural_death * (cur.natural_deaths - prev.natural_deaths)
                + pol.benefit_disease_death * (cur.disease_deaths - prev.disease_deaths));
        prev = cur;
        series.push((1.0 + pol.phi) * net * premium_partial - benefit_partial);
    }
    Ok(series)
}

/// Minimum profit, its month, the start-up capital, the asset series, and
/// the end-of-period profit percentage.
///
/// The start-up capital is reported as a present value at time 0:
/// `-minimum_profit * v^minimum_profit_month`. The asset series tracks the
/// fund against the capital's accumulated value at the trough month, which
/// is exactly `-minimum_profit`; the series is therefore nonnegative and
/// touches zero precisely at the trough. When the profit series never goes
/// negative, the capital is zero, the asset series equals the profit
/// series, and the profit percentage is not applicable.
pub fn capital_and_percentage(profit: &[f64], pol: &PolicyParams) -> CapitalSummary {
    assert_eq!(
        profit.len(),
        pol.horizon as usize + 1,
        "profit series length does not match the policy horizon"
    );
    let mut minimum_profit = profit[0];
    let mut minimum_profit_month = 0u32;
    for (month, &value) in profit.iter().enumerate() {
        // strict comparison keeps the smallest month on ties
        if value < minimum_profit {
            minimum_profit = value;
            minimum_profit_month = month as u32;
        }
    }
    let capital_required = minimum_profit < 0.0;
    let startup_capital = if capital_required {
        -minimum_profit * pol.discount_factor().powi(minimum_profit_month as i32)
    } else {
        0.0
    };
    let buffer = if capital_required { -minimum_profit } else { 0.0 };
    let asset_series = profit.iter().map(|p| buffer + p).collect();
    let end_profit = *profit.last().expect("profit series is nonempty");
    let profit_percentage = if startup_capital > 0.0 {
        Some(end_profit / startup_capital * 100.0)
    } else {
        None
    };
    CapitalSummary {
        minimum_profit,
        minimum_profit_month,
        startup_capital,
        capital_required,
        asset_series,
        end_profit,
        profit_percentage,
    }
}

/// Run the whole pipeline for a scenario: simulate, then derive premiums,
/// profit, capital, and the asset series.
pub fn price(sc: &Scenario) -> Result<PricingReport, Error> {
    let traj = simulate(sc)?;
    price_trajectory(&traj, sc.policy())
}

/// Price an already-simulated trajectory.
pub fn price_trajectory(traj: &Trajectory, pol: &PolicyParams) -> Result<PricingReport, Error> {
    let base = premium_base(traj, pol)?;
    if base == 0.0 {
        return Err(Error::DegenerateBase);
    }
    let benefits = total_benefit_pv(traj, pol, pol.horizon)?;
    let net = benefits / base;
    let gross = gross_premium(net, pol);
    let profit = profit_series(traj, pol, net)?;
    let capital = capital_and_percentage(&profit, pol);
    Ok(PricingReport {
        net_premium: net,
        gross_premium: gross,
        premium_base: base,
        total_benefit_pv: benefits,
        profit_series: profit,
        minimum_profit: capital.minimum_profit,
        minimum_profit_month: capital.minimum_profit_month,
        startup_capital: capital.startup_capital,
        capital_required: capital.capital_required,
        asset_series: capital.asset_series,
        end_profit: capital.end_profit,
        profit_percentage: capital.profit_percentage,
    })
}
