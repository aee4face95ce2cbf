//! Numerical sensitivity indices of the headline quantities (basic
//! reproduction number, gross premium, start-up capital, end-of-period
//! profit) with respect to the thirteen scenario parameters, plus the exact
//! closed-form sensitivities of the basic reproduction number used as an
//! oracle.
//!
//! The index of quantity Q with respect to parameter p estimates the
//! elasticity (dQ/dp)(p/Q): each nonzero perturbation fraction psi rescales
//! p to p(1+psi), the pipeline reruns in full, and the index is the mean of
//! relative-change ratios rho(psi)/psi over the nonzero psi. A zero psi
//! would contribute 0/0 and is skipped; it neither adds to the sum nor to
//! the divisor. Every (parameter, psi) evaluation is independent and pure,
//! so a table fill parallelises trivially.

use crate::actuarial::{price, PricingReport};
use crate::analysis::basic_reproduction_number;
use crate::error::{Error, ValidationError};
use crate::model::Scenario;

/// The thirteen perturbable scenario parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParameterId {
    Lambda,
    Alpha1,
    Alpha2,
    Beta,
    Gamma,
    Mu1,
    Mu2,
    Interest,
    Omega,
    Phi,
    BenefitHospital,
    BenefitNaturalDeath,
    BenefitDiseaseDeath,
}

impl ParameterId {
    pub const ALL: [ParameterId; 13] = [
        ParameterId::Lambda,
        ParameterId::Alpha1,
        ParameterId::Alpha2,
        ParameterId::Beta,
        ParameterId::Gamma,
        ParameterId::Mu1,
        ParameterId::Mu2,
        ParameterId::Interest,
        ParameterId::Omega,
        ParameterId::Phi,
        ParameterId::BenefitHospital,
        ParameterId::BenefitNaturalDeath,
        ParameterId::BenefitDiseaseDeath,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ParameterId::Lambda => "lambda",
            ParameterId::Alpha1 => "alpha1",
            ParameterId::Alpha2 => "alpha2",
            ParameterId::Beta => "beta",
            ParameterId::Gamma => "gamma",
            ParameterId::Mu1 => "mu1",
            ParameterId::Mu2 => "mu2",
            ParameterId::Interest => "interest_i",
            ParameterId::Omega => "omega",
            ParameterId::Phi => "phi",
            ParameterId::BenefitHospital => "benefit_H",
            ParameterId::BenefitNaturalDeath => "benefit_D",
            ParameterId::BenefitDiseaseDeath => "benefit_Dstar",
        }
    }
}

/// The four quantities whose sensitivity is tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuantityId {
    BasicReproductionNumber,
    GrossPremium,
    StartupCapital,
    EndProfit,
}

impl QuantityId {
    pub const ALL: [QuantityId; 4] = [
        QuantityId::BasicReproductionNumber,
        QuantityId::GrossPremium,
        QuantityId::StartupCapital,
        QuantityId::EndProfit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QuantityId::BasicReproductionNumber => "R0",
            QuantityId::GrossPremium => "P_gross",
            QuantityId::StartupCapital => "Gamma",
            QuantityId::EndProfit => "Pi_end",
        }
    }
}

/// A set of signed perturbation fractions. Zero entries are tolerated but
/// skipped by the estimator; at least one entry must be nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationSet {
    psis: Vec<f64>,
}

impl PerturbationSet {
    pub fn new(psis: Vec<f64>) -> Result<Self, ValidationError> {
        if !psis.iter().any(|psi| *psi != 0.0 && psi.is_finite()) {
            return Err(ValidationError::EmptyPerturbationSet);
        }
        Ok(Self { psis })
    }

    pub fn psis(&self) -> &[f64] {
        &self.psis
    }

    /// The entries the estimator actually averages over.
    pub fn nonzero(&self) -> impl Iterator<Item = f64> + '_ {
        self.psis.iter().copied().filter(|psi| *psi != 0.0)
    }
}

impl Default for PerturbationSet {
    /// `{-10%, -5%, 0%, +5%, +10%}`.
    fn default() -> Self {
        Self {
            psis: vec![-0.10, -0.05, 0.0, 0.05, 0.10],
        }
    }
}

/// The scenario regime a table was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioRegime {
    DiseaseFree,
    Endemic,
}

/// One table entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityCell {
    pub quantity: QuantityId,
    pub parameter: ParameterId,
    pub value: f64,
    /// True when the trough month of the profit series moved under some
    /// perturbation of this parameter. The start-up capital is not smooth
    /// across such a move, so its finite-difference index deserves caution.
    /// Only ever set on start-up-capital cells.
    pub trough_month_moved: bool,
}

/// The full 4 x 13 sensitivity table for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityTable {
    pub regime: ScenarioRegime,
    pub cells: Vec<SensitivityCell>,
}

impl SensitivityTable {
    pub fn get(&self, quantity: QuantityId, parameter: ParameterId) -> &SensitivityCell {
        self.cells
            .iter()
            .find(|c| c.quantity == quantity && c.parameter == parameter)
            .expect("table holds every (quantity, parameter) pair")
    }
}

/// Rescale one parameter by `(1 + psi)`, leaving everything else unchanged.
/// Fails with `InvalidPerturbation` when the result leaves the valid
/// parameter region.
pub fn perturb(sc: &Scenario, parameter: ParameterId, psi: f64) -> Result<Scenario, Error> {
    let mut epidemic = *sc.epidemic();
    let mut policy = *sc.policy();
    let factor = 1.0 + psi;
    match parameter {
        ParameterId::Lambda => epidemic.lambda *= factor,
        ParameterId::Alpha1 => epidemic.alpha1 *= factor,
        ParameterId::Alpha2 => epidemic.alpha2 *= factor,
        ParameterId::Beta => epidemic.beta *= factor,
        ParameterId::Gamma => epidemic.gamma *= factor,
        ParameterId::Mu1 => epidemic.mu1 *= factor,
        ParameterId::Mu2 => epidemic.mu2 *= factor,
        ParameterId::Interest => policy.interest *= factor,
        ParameterId::Omega => policy.omega *= factor,
        ParameterId::Phi => policy.phi *= factor,
        ParameterId::BenefitHospital => policy.benefit_hospital *= factor,
        ParameterId::BenefitNaturalDeath => policy.benefit_natural_death *= factor,
        ParameterId::BenefitDiseaseDeath => policy.benefit_disease_death *= factor,
    }
    Scenario::new(epidemic, policy, *sc.initial()).map_err(Error::InvalidPerturbation)
}

/// All four quantities from one pipeline run, plus the trough month used
/// for the capital-smoothness flag.
#[derive(Debug, Clone, Copy, PartialEq)]
struct QuantitySnapshot {
    r0: f64,
    gross_premium: f64,
    startup_capital: f64,
    end_profit: f64,
    trough_month: u32,
}

impl QuantitySnapshot {
    fn from_report(r0: f64, report: &PricingReport) -> Self {
        Self {
            r0,
            gross_premium: report.gross_premium,
            startup_capital: report.startup_capital,
            end_profit: report.end_profit,
            trough_month: report.minimum_profit_month,
        }
    }

    fn get(&self, quantity: QuantityId) -> f64 {
        match quantity {
            QuantityId::BasicReproductionNumber => self.r0,
            QuantityId::GrossPremium => self.gross_premium,
            QuantityId::StartupCapital => self.startup_capital,
            QuantityId::EndProfit => self.end_profit,
        }
    }
}

fn snapshot(sc: &Scenario) -> Result<QuantitySnapshot, Error> {
    let r0 = basic_reproduction_number(sc.epidemic());
    let report = price(sc)?;
    Ok(QuantitySnapshot::from_report(r0, &report))
}

/// Evaluate one quantity for a scenario. The basic reproduction number is
/// closed-form; the three financial quantities rerun the full simulate and
/// price pipeline, because perturbing an epidemiological parameter changes
/// the trajectory and with it every sum downstream.
pub fn evaluate_quantity(sc: &Scenario, quantity: QuantityId) -> Result<f64, Error> {
    match quantity {
        QuantityId::BasicReproductionNumber => Ok(basic_reproduction_number(sc.epidemic())),
        _ => Ok(snapshot(sc)?.get(quantity)),
    }
}

/// Sensitivity index of `quantity` with respect to `parameter`: the mean
/// over nonzero psi of `rho(psi)/psi`, where `rho` is the relative change
/// of the quantity under the perturbation.
pub fn sensitivity_index(
    sc: &Scenario,
    quantity: QuantityId,
    parameter: ParameterId,
    psis: &PerturbationSet,
) -> Result<f64, Error> {
    let base = evaluate_quantity(sc, quantity)?;
    if base == 0.0 {
        return Err(Error::ZeroBaseline {
            quantity: quantity.name(),
        });
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for psi in psis.nonzero() {
        let perturbed = evaluate_quantity(&perturb(sc, parameter, psi)?, quantity)?;
        sum += (perturbed - base) / base / psi;
        count += 1;
    }
    Ok(sum / count as f64)
}

/// Exact elasticities of the basic reproduction number with respect to all
/// thirteen parameters, from partial derivatives of the closed form
/// `beta*lambda / (mu1*(alpha2+gamma+mu2))`: lambda and beta enter
/// linearly (+1), mu1 inversely (-1), alpha2, gamma, mu2 through the
/// outflow denominator, and the remaining parameters not at all.
pub fn analytic_r0_sensitivities(
    p: &crate::model::EpidemicParams,
) -> Vec<(ParameterId, f64)> {
    let outflow = p.infected_outflow();
    ParameterId::ALL
        .iter()
        .map(|&id| {
            let value = match id {
                ParameterId::Lambda | ParameterId::Beta => 1.0,
                ParameterId::Mu1 => -1.0,
                ParameterId::Alpha2 => -p.alpha2 / outflow,
                ParameterId::Gamma => -p.gamma / outflow,
                ParameterId::Mu2 => -p.mu2 / outflow,
                _ => 0.0,
            };
            (id, value)
        })
        .collect()
}

/// Fill the whole 4 x 13 table for a scenario. One pipeline run per
/// (parameter, nonzero psi) pair supplies all four quantities at once.
pub fn sensitivity_table(
    sc: &Scenario,
    psis: &PerturbationSet,
) -> Result<SensitivityTable, Error> {
    let base = snapshot(sc)?;
    for quantity in QuantityId::ALL {
        if base.get(quantity) == 0.0 {
            return Err(Error::ZeroBaseline {
                quantity: quantity.name(),
            });
        }
    }
    let regime = if base.r0 < 1.0 {
        ScenarioRegime::DiseaseFree
    } else {
        ScenarioRegime::Endemic
    };
    let mut cells = Vec::with_capacity(QuantityId::ALL.len() * ParameterId::ALL.len());
    for parameter in ParameterId::ALL {
        let mut sums = [0.0f64; 4];
        let mut count = 0usize;
        let mut trough_moved = false;
        for psi in psis.nonzero() {
            let shot = snapshot(&perturb(sc, parameter, psi)?)?;
            for (sum, quantity) in sums.iter_mut().zip(QuantityId::ALL) {
                let b = base.get(quantity);
                *sum += (shot.get(quantity) - b) / b / psi;
            }
            trough_moved |= shot.trough_month != base.trough_month;
            count += 1;
        }
        for (sum, quantity) in sums.iter().zip(QuantityId::ALL) {
            cells.push(SensitivityCell {
                quantity,
                parameter,
                value: sum / count as f64,
                trough_month_moved: trough_moved
                    && quantity == QuantityId::StartupCapital,
            });
        }
    }
    Ok(SensitivityTable { regime, cells })
}
