//! Core model data: parameters, states, trajectories, scenarios, and the
//! continuous vector field.
//!
//! The population is split into susceptible (S), infected non-hospitalised
//! (I), and hospitalised (H) individuals. Hospitalised individuals are fully
//! quarantined and do not transmit, so the incidence term is `beta * S * I`.
//! Two cumulative counters ride along: D (natural deaths, fed by susceptible
//! individuals only) and D* (deaths by disease, fed by I and H). Because D
//! only ever counts susceptibles and D* only ever counts the infected
//! compartments, the two death-benefit streams never overlap.
//!
//! All types are immutable value data and every operation here is a pure
//! function; everything is safe to evaluate from many threads concurrently.

use crate::error::ValidationError;

/// Relative slack accepted when checking that `1/dt` is a whole number.
const STEP_GRID_TOL: f64 = 1e-9;

/// The seven epidemiological rates. All units are per month; `beta` is per
/// individual per month. Every field must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpidemicParams {
    /// Birth rate, individuals/month.
    pub lambda: f64,
    /// Treatment coefficient of hospitalised individuals, 1/month.
    pub alpha1: f64,
    /// Treatment coefficient of non-hospitalised infected individuals, 1/month.
    pub alpha2: f64,
    /// Incidence coefficient, 1/(individual * month).
    pub beta: f64,
    /// Hospitalisation coefficient of infected individuals, 1/month.
    pub gamma: f64,
    /// Natural death coefficient, 1/month.
    pub mu1: f64,
    /// Death-by-disease coefficient, 1/month.
    pub mu2: f64,
}

impl EpidemicParams {
    pub fn validate(&self) -> Result<(), ValidationError> {
        let fields = [
            ("lambda", self.lambda),
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("mu1", self.mu1),
            ("mu2", self.mu2),
        ];
        for (name, value) in fields {
            if value <= 0.0 || !value.is_finite() {
                return Err(ValidationError::NonPositiveRate { name, value });
            }
        }
        Ok(())
    }

    /// Total outflow rate from the infected compartment: alpha2 + gamma + mu2.
    pub fn infected_outflow(&self) -> f64 {
        self.alpha2 + self.gamma + self.mu2
    }

    /// Total outflow rate from the hospitalised compartment: alpha1 + mu2.
    pub fn hospitalised_outflow(&self) -> f64 {
        self.alpha1 + self.mu2
    }
}

/// Discretisation and insurance parameters: horizon, step size, interest,
/// surcharges, and benefit amounts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyParams {
    /// Length of the insurance availability period, whole months.
    pub horizon: u32,
    /// Integration step size in months; `1/dt` must be a whole number so
    /// that every integer month lands exactly on a grid node.
    pub dt: f64,
    /// Constant monthly interest rate (dimensionless, > -1).
    pub interest: f64,
    /// Premium surcharge fraction allocated to operational costs.
    pub omega: f64,
    /// Premium surcharge fraction allocated to profit.
    pub phi: f64,
    /// Monthly benefit per hospitalised individual, $.
    pub benefit_hospital: f64,
    /// One-time benefit per natural death, $.
    pub benefit_natural_death: f64,
    /// One-time benefit per death by disease, $.
    pub benefit_disease_death: f64,
}

impl PolicyParams {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.horizon < 1 {
            return Err(ValidationError::HorizonTooShort(self.horizon));
        }
        if self.dt <= 0.0 || !self.dt.is_finite() || !grid_divides_month(self.dt) {
            return Err(ValidationError::BadStepSize(self.dt));
        }
        if self.interest <= -1.0 || !self.interest.is_finite() {
            return Err(ValidationError::InterestTooLow(self.interest));
        }
        let nonneg = [
            ("omega", self.omega),
            ("phi", self.phi),
            ("benefit_H", self.benefit_hospital),
            ("benefit_D", self.benefit_natural_death),
            ("benefit_Dstar", self.benefit_disease_death),
        ];
        for (name, value) in nonneg {
            if value < 0.0 || !value.is_finite() {
                return Err(ValidationError::NegativeValue { name, value });
            }
        }
        Ok(())
    }

    /// Monthly discount factor v = 1/(1+i).
    pub fn discount_factor(&self) -> f64 {
        1.0 / (1.0 + self.interest)
    }

    /// Number of integration steps per month (the whole number `1/dt`).
    pub fn steps_per_month(&self) -> usize {
        (1.0 / self.dt).round() as usize
    }

    /// Total number of integration steps over the horizon.
    pub fn total_steps(&self) -> usize {
        self.horizon as usize * self.steps_per_month()
    }
}

fn grid_divides_month(dt: f64) -> bool {
    let inv = 1.0 / dt;
    let rounded = inv.round();
    rounded >= 1.0 && (inv - rounded).abs() <= STEP_GRID_TOL * inv
}

/// Compartment counts at one instant, plus the two cumulative death
/// counters. All fields are nonnegative on a valid state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SihState {
    /// Susceptible individuals.
    pub susceptible: f64,
    /// Infected, non-hospitalised individuals.
    pub infected: f64,
    /// Hospitalised individuals.
    pub hospitalised: f64,
    /// Cumulative natural deaths.
    pub natural_deaths: f64,
    /// Cumulative deaths by disease.
    pub disease_deaths: f64,
}

impl SihState {
    pub fn new(
        susceptible: f64,
        infected: f64,
        hospitalised: f64,
        natural_deaths: f64,
        disease_deaths: f64,
    ) -> Self {
        Self {
            susceptible,
            infected,
            hospitalised,
            natural_deaths,
            disease_deaths,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let fields = [
            ("S", self.susceptible),
            ("I", self.infected),
            ("H", self.hospitalised),
            ("D", self.natural_deaths),
            ("Dstar", self.disease_deaths),
        ];
        for (name, value) in fields {
            if value < 0.0 || !value.is_finite() {
                return Err(ValidationError::NegativeValue { name, value });
            }
        }
        Ok(())
    }

    /// Living population S + I + H.
    pub fn population(&self) -> f64 {
        self.susceptible + self.infected + self.hospitalised
    }
}

/// Time derivatives of the five state variables, individuals/month.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SihDerivatives {
    pub susceptible: f64,
    pub infected: f64,
    pub hospitalised: f64,
    pub natural_deaths: f64,
    pub disease_deaths: f64,
}

/// The continuous vector field of the five-equation system:
///
/// ```text
/// dS/dt  = lambda - beta*S*I + alpha1*H + alpha2*I - mu1*S
/// dI/dt  = beta*S*I - (alpha2 + gamma + mu2)*I
/// dH/dt  = gamma*I - (alpha1 + mu2)*H
/// dD/dt  = mu1*S
/// dD*/dt = mu2*I + mu2*H
/// ```
///
/// Total function on valid inputs. Summing all five components collapses to
/// `lambda`: births are the only net inflow.
pub fn vector_field(p: &EpidemicParams, s: &SihState) -> SihDerivatives {
    let incidence = p.beta * s.susceptible * s.infected;
    SihDerivatives {
        susceptible: p.lambda - incidence + p.alpha1 * s.hospitalised + p.alpha2 * s.infected
            - p.mu1 * s.susceptible,
        infected: incidence - p.infected_outflow() * s.infected,
        hospitalised: p.gamma * s.infected - p.hospitalised_outflow() * s.hospitalised,
        natural_deaths: p.mu1 * s.susceptible,
        disease_deaths: p.mu2 * s.infected + p.mu2 * s.hospitalised,
    }
}

/// A simulated orbit on the fixed step grid: `states[n]` is the state at
/// time `n * dt` months. Because `1/dt` is a whole number, the state at
/// integer month `t` sits exactly at index `t * steps_per_month`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dt: f64,
    steps_per_month: usize,
    states: Vec<SihState>,
}

impl Trajectory {
    /// Build a trajectory from explicit states. Checks the step grid, state
    /// nonnegativity, and that both death counters are nondecreasing.
    pub fn from_states(dt: f64, states: Vec<SihState>) -> Result<Self, ValidationError> {
        if dt <= 0.0 || !dt.is_finite() || !grid_divides_month(dt) {
            return Err(ValidationError::BadStepSize(dt));
        }
        for s in &states {
            s.validate()?;
        }
        for (index, pair) in states.windows(2).enumerate() {
            if pair[1].natural_deaths < pair[0].natural_deaths {
                return Err(ValidationError::NonMonotoneDeaths {
                    counter: "natural-death",
                    index: index + 1,
                });
            }
            if pair[1].disease_deaths < pair[0].disease_deaths {
                return Err(ValidationError::NonMonotoneDeaths {
                    counter: "disease-death",
                    index: index + 1,
                });
            }
        }
        Ok(Self {
            dt,
            steps_per_month: (1.0 / dt).round() as usize,
            states,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps_per_month(&self) -> usize {
        self.steps_per_month
    }

    pub fn states(&self) -> &[SihState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// State at integer month `t` (exact grid lookup, no interpolation).
    ///
    /// Panics if the trajectory does not reach month `t`.
    pub fn at_month(&self, month: u32) -> &SihState {
        &self.states[month as usize * self.steps_per_month]
    }

    /// Number of whole months the trajectory covers.
    pub fn months(&self) -> u32 {
        ((self.states.len() - 1) / self.steps_per_month) as u32
    }

    pub fn final_state(&self) -> &SihState {
        self.states.last().expect("trajectory has at least one state")
    }
}

/// A complete simulation setup: epidemic rates, policy terms, and the
/// initial state. Construction validates every invariant; all downstream
/// operations assume validated inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    epidemic: EpidemicParams,
    policy: PolicyParams,
    initial: SihState,
}

impl Scenario {
    pub fn new(
        epidemic: EpidemicParams,
        policy: PolicyParams,
        initial: SihState,
    ) -> Result<Self, ValidationError> {
        epidemic.validate()?;
        policy.validate()?;
        initial.validate()?;
        Ok(Self {
            epidemic,
            policy,
            initial,
        })
    }

    pub fn epidemic(&self) -> &EpidemicParams {
        &self.epidemic
    }

    pub fn policy(&self) -> &PolicyParams {
        &self.policy
    }

    pub fn initial(&self) -> &SihState {
        &self.initial
    }
}

/// Default epidemic rates shared by the two shipped scenarios; only the
/// incidence coefficient differs between them.
fn default_epidemic(beta: f64) -> EpidemicParams {
    EpidemicParams {
        lambda: 4.21492,
        alpha1: 0.05,
        alpha2: 0.05,
        beta,
        gamma: 0.66,
        mu1: 0.00745,
        mu2: 0.01829,
    }
}

fn default_policy() -> PolicyParams {
    PolicyParams {
        horizon: 500,
        dt: 0.05,
        interest: 0.00233,
        omega: 0.10,
        phi: 0.05,
        benefit_hospital: 2_000.0,
        benefit_natural_death: 40_000.0,
        benefit_disease_death: 50_000.0,
    }
}

fn default_initial() -> SihState {
    SihState::new(2999.0, 1.0, 0.0, 0.0, 0.0)
}

/// The shipped subcritical scenario (beta = 0.00100, no sustained spread).
pub fn disease_free_scenario() -> Scenario {
    Scenario::new(default_epidemic(0.001), default_policy(), default_initial())
        .expect("shipped defaults are valid")
}

/// The shipped supercritical scenario (beta = 0.00300, persistent infection).
pub fn endemic_scenario() -> Scenario {
    Scenario::new(default_epidemic(0.003), default_policy(), default_initial())
        .expect("shipped defaults are valid")
}

/// Both shipped scenarios: (disease-free, endemic).
pub fn default_scenarios() -> (Scenario, Scenario) {
    (disease_free_scenario(), endemic_scenario())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endemic_params() -> EpidemicParams {
        default_epidemic(0.003)
    }

    #[test]
    fn vector_field_matches_hand_arithmetic() {
        let p = endemic_params();
        let s = SihState::new(2999.0, 1.0, 0.0, 0.0, 0.0);
        let d = vector_field(&p, &s);
        assert!((d.susceptible - (-27.07463)).abs() < 1e-5);
        assert!((d.infected - 8.26871).abs() < 1e-5);
        assert!((d.hospitalised - 0.66).abs() < 1e-5);
        assert!((d.natural_deaths - 22.34255).abs() < 1e-5);
        assert!((d.disease_deaths - 0.01829).abs() < 1e-5);
    }

    #[test]
    fn vector_field_vanishes_at_disease_free_equilibrium() {
        let p = endemic_params();
        let s = SihState::new(p.lambda / p.mu1, 0.0, 0.0, 7.0, 3.0);
        let d = vector_field(&p, &s);
        assert!(d.susceptible.abs() < 1e-12 * p.lambda);
        assert_eq!(d.infected, 0.0);
        assert_eq!(d.hospitalised, 0.0);
    }

    #[test]
    fn no_infection_without_infected_individuals() {
        let p = endemic_params();
        let s = SihState::new(1234.0, 0.0, 0.0, 0.0, 0.0);
        let d = vector_field(&p, &s);
        assert_eq!(d.infected, 0.0);
        assert_eq!(d.hospitalised, 0.0);
        assert_eq!(d.disease_deaths, 0.0);
    }

    #[test]
    fn field_components_sum_to_birth_rate() {
        let p = endemic_params();
        let s = SihState::new(512.0, 37.5, 12.25, 100.0, 42.0);
        let d = vector_field(&p, &s);
        let total = d.susceptible + d.infected + d.hospitalised + d.natural_deaths
            + d.disease_deaths;
        let scale = p.beta * s.susceptible * s.infected + p.lambda;
        assert!((total - p.lambda).abs() < 1e-12 * scale.max(1.0));
    }

    #[test]
    fn default_scenarios_carry_table_values() {
        let (df, en) = default_scenarios();
        assert_eq!(df.epidemic().beta, 0.001);
        assert_eq!(en.epidemic().beta, 0.003);
        for sc in [&df, &en] {
            assert_eq!(sc.policy().horizon, 500);
            assert_eq!(sc.policy().dt, 0.05);
            assert_eq!(sc.initial().population(), 3000.0);
        }
        assert_eq!(df.epidemic().lambda, en.epidemic().lambda);
        assert_eq!(df.policy(), en.policy());
    }

    #[test]
    fn positivity_is_enforced() {
        let mut p = endemic_params();
        p.mu1 = 0.0;
        assert_eq!(
            p.validate(),
            Err(ValidationError::NonPositiveRate {
                name: "mu1",
                value: 0.0
            })
        );
        p.mu1 = -0.1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn step_size_must_divide_a_month() {
        let mut pol = default_policy();
        for good in [1.0, 0.5, 0.25, 0.05, 0.1, 0.02] {
            pol.dt = good;
            assert!(pol.validate().is_ok(), "dt = {good} should be accepted");
        }
        assert_eq!(PolicyParams { dt: 0.05, ..pol }.steps_per_month(), 20);
        for bad in [0.07, 0.3, 0.0, -0.05, 1.5] {
            pol.dt = bad;
            assert_eq!(pol.validate(), Err(ValidationError::BadStepSize(bad)));
        }
    }

    #[test]
    fn interest_floor_and_nonnegative_loadings() {
        let mut pol = default_policy();
        pol.interest = -1.0;
        assert!(matches!(
            pol.validate(),
            Err(ValidationError::InterestTooLow(_))
        ));
        pol.interest = -0.5;
        assert!(pol.validate().is_ok());
        pol.benefit_hospital = -1.0;
        assert!(matches!(
            pol.validate(),
            Err(ValidationError::NegativeValue { name: "benefit_H", .. })
        ));
    }

    #[test]
    fn trajectory_month_indexing_is_exact() {
        let dt = 0.25;
        let states: Vec<SihState> = (0..=8)
            .map(|n| SihState::new(100.0 - n as f64, 0.0, 0.0, n as f64, 0.0))
            .collect();
        let traj = Trajectory::from_states(dt, states).unwrap();
        assert_eq!(traj.months(), 2);
        assert_eq!(traj.at_month(0).natural_deaths, 0.0);
        assert_eq!(traj.at_month(1).natural_deaths, 4.0);
        assert_eq!(traj.at_month(2).natural_deaths, 8.0);
    }

    #[test]
    fn trajectory_rejects_decreasing_death_counters() {
        let states = vec![
            SihState::new(10.0, 0.0, 0.0, 5.0, 0.0),
            SihState::new(10.0, 0.0, 0.0, 4.0, 0.0),
        ];
        assert_eq!(
            Trajectory::from_states(1.0, states),
            Err(ValidationError::NonMonotoneDeaths {
                counter: "natural-death",
                index: 1
            })
        );
    }

    #[test]
    fn scenario_construction_validates_everything() {
        let mut e = endemic_params();
        e.beta = -1.0;
        assert!(Scenario::new(e, default_policy(), default_initial()).is_err());
        let bad_state = SihState::new(-1.0, 0.0, 0.0, 0.0, 0.0);
        assert!(Scenario::new(endemic_params(), default_policy(), bad_state).is_err());
    }
}
