//! Fixed-step integration of the five-equation system.
//!
//! Two first-order stepping orders are provided. [`euler_step`] is the
//! textbook simultaneous update `s + dt * vector_field(p, s)`, the map the
//! discrete stability analysis describes. [`sequential_euler_step`] advances
//! the equations in declaration order with each equation reading the
//! compartments already advanced within the step; the production pipeline
//! ([`simulate`], and everything priced on top of it) runs on this scheme,
//! and the shipped scenario tables are produced with it. The two schemes
//! share fixed points and first-order convergence and differ at O(dt^2)
//! within a step. A classical fourth-order integrator on the same grid
//! serves as an independent accuracy reference.

use crate::error::Error;
use crate::model::{vector_field, EpidemicParams, Scenario, SihDerivatives, SihState, Trajectory};

fn advance(s: &SihState, d: &SihDerivatives, dt: f64) -> SihState {
    SihState {
        susceptible: s.susceptible + dt * d.susceptible,
        infected: s.infected + dt * d.infected,
        hospitalised: s.hospitalised + dt * d.hospitalised,
        natural_deaths: s.natural_deaths + dt * d.natural_deaths,
        disease_deaths: s.disease_deaths + dt * d.disease_deaths,
    }
}

/// Name of the first live compartment a step drove negative, if any. The
/// death counters cannot decrease, so only S, I, H are checked.
fn negative_component(s: &SihState) -> Option<&'static str> {
    if s.susceptible < 0.0 {
        Some("S")
    } else if s.infected < 0.0 {
        Some("I")
    } else if s.hospitalised < 0.0 {
        Some("H")
    } else {
        None
    }
}

fn guard(next: SihState) -> Result<SihState, Error> {
    match negative_component(&next) {
        Some(component) => Err(Error::NegativeState { component, step: 0 }),
        None => Ok(next),
    }
}

/// One simultaneous first-order step: `s + dt * vector_field(p, s)` in all
/// five components.
///
/// A negative S, I, or H in the result means the step size is too large
/// for this state; the error leaves the policy to the caller rather than
/// clamping, because a clamp would silently corrupt the actuarial sums
/// built on the trajectory. A bare step reports step index 0.
pub fn euler_step(p: &EpidemicParams, s: &SihState, dt: f64) -> Result<SihState, Error> {
    guard(advance(s, &vector_field(p, s), dt))
}

/// One sequential first-order step: the equations advance in declaration
/// order and each reads the compartments already advanced within the step.
/// S sees the previous state; I sees the new S; H sees the new I; the
/// death counters read the new S, I, H. Fixed points coincide with
/// [`euler_step`]. Negative-state handling is identical.
pub fn sequential_euler_step(
    p: &EpidemicParams,
    s: &SihState,
    dt: f64,
) -> Result<SihState, Error> {
    let susceptible = s.susceptible
        + (p.lambda - p.beta * s.susceptible * s.infected
            + p.alpha1 * s.hospitalised
            + p.alpha2 * s.infected
            - p.mu1 * s.susceptible)
            * dt;
    let infected =
        s.infected + (p.beta * susceptible * s.infected - p.infected_outflow() * s.infected) * dt;
    let hospitalised =
        s.hospitalised + (p.gamma * infected - p.hospitalised_outflow() * s.hospitalised) * dt;
    let natural_deaths = s.natural_deaths + p.mu1 * susceptible * dt;
    let disease_deaths = s.disease_deaths + (p.mu2 * infected + p.mu2 * hospitalised) * dt;
    guard(SihState {
        susceptible,
        infected,
        hospitalised,
        natural_deaths,
        disease_deaths,
    })
}

fn rk4_step(p: &EpidemicParams, s: &SihState, dt: f64) -> Result<SihState, Error> {
    let k1 = vector_field(p, s);
    let k2 = vector_field(p, &advance(s, &k1, dt / 2.0));
    let k3 = vector_field(p, &advance(s, &k2, dt / 2.0));
    let k4 = vector_field(p, &advance(s, &k3, dt));
    let combined = SihDerivatives {
        susceptible: (k1.susceptible + 2.0 * k2.susceptible + 2.0 * k3.susceptible
            + k4.susceptible)
            / 6.0,
        infected: (k1.infected + 2.0 * k2.infected + 2.0 * k3.infected + k4.infected) / 6.0,
        hospitalised: (k1.hospitalised + 2.0 * k2.hospitalised + 2.0 * k3.hospitalised
            + k4.hospitalised)
            / 6.0,
        natural_deaths: (k1.natural_deaths + 2.0 * k2.natural_deaths + 2.0 * k3.natural_deaths
            + k4.natural_deaths)
            / 6.0,
        disease_deaths: (k1.disease_deaths + 2.0 * k2.disease_deaths + 2.0 * k3.disease_deaths
            + k4.disease_deaths)
            / 6.0,
    };
    guard(advance(s, &combined, dt))
}

fn integrate(
    sc: &Scenario,
    step: impl Fn(&EpidemicParams, &SihState, f64) -> Result<SihState, Error>,
) -> Result<Trajectory, Error> {
    let dt = sc.policy().dt;
    let steps = sc.policy().total_steps();
    let mut states = Vec::with_capacity(steps + 1);
    states.push(*sc.initial());
    for n in 0..steps {
        let next = step(sc.epidemic(), &states[n], dt).map_err(|e| match e {
            Error::NegativeState { component, .. } => Error::NegativeState { component, step: n },
            other => other,
        })?;
        states.push(next);
    }
    Ok(Trajectory::from_states(dt, states).expect("integrator preserves trajectory invariants"))
}

/// Integrate the scenario over the whole horizon with the production
/// scheme ([`sequential_euler_step`]): `horizon/dt` steps,
/// `horizon/dt + 1` states, every step stored.
pub fn simulate(sc: &Scenario) -> Result<Trajectory, Error> {
    integrate(sc, sequential_euler_step)
}

/// Integrate the scenario with the simultaneous scheme ([`euler_step`]),
/// for comparison against [`simulate`] and against the map the discrete
/// stability analysis describes.
pub fn simulate_simultaneous(sc: &Scenario) -> Result<Trajectory, Error> {
    integrate(sc, euler_step)
}

/// Integrate the scenario with the classical fourth-order one-step scheme
/// on the same grid. Serves as an independent numerical reference for the
/// first-order results; the pricing pipeline never consumes it.
pub fn reference_simulate(sc: &Scenario) -> Result<Trajectory, Error> {
    integrate(sc, rk4_step)
}
