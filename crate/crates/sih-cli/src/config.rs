//! Flat `key = value` scenario configs: parsing, override application, and
//! round-trippable emission.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Missing keys fall back to the shipped defaults (the disease-free
//! scenario); unknown and duplicate keys are parse errors with a line
//! number.

use std::collections::BTreeMap;

use sih::model::{EpidemicParams, PolicyParams, Scenario, SihState};

use crate::CliError;

/// Returned by [`Draft::set`] for keys outside [`KEYS`].
#[derive(Debug)]
pub struct UnknownKey;

/// Every accepted key, in emission order.
pub const KEYS: [&str; 20] = [
    "lambda", "alpha1", "alpha2", "beta", "gamma", "mu1", "mu2", "S0", "I0", "H0", "D0",
    "Dstar0", "T", "dt", "interest_i", "omega", "phi", "benefit_H", "benefit_D",
    "benefit_Dstar",
];

/// A scenario under construction: raw values keyed by config name, not yet
/// validated.
#[derive(Debug, Clone)]
pub struct Draft {
    values: BTreeMap<&'static str, f64>,
}

impl Draft {
    fn from_scenario(sc: &Scenario) -> Self {
        let e = sc.epidemic();
        let p = sc.policy();
        let s = sc.initial();
        let values = BTreeMap::from([
            ("lambda", e.lambda),
            ("alpha1", e.alpha1),
            ("alpha2", e.alpha2),
            ("beta", e.beta),
            ("gamma", e.gamma),
            ("mu1", e.mu1),
            ("mu2", e.mu2),
            ("S0", s.susceptible),
            ("I0", s.infected),
            ("H0", s.hospitalised),
            ("D0", s.natural_deaths),
            ("Dstar0", s.disease_deaths),
            ("T", p.horizon as f64),
            ("dt", p.dt),
            ("interest_i", p.interest),
            ("omega", p.omega),
            ("phi", p.phi),
            ("benefit_H", p.benefit_hospital),
            ("benefit_D", p.benefit_natural_death),
            ("benefit_Dstar", p.benefit_disease_death),
        ]);
        Self { values }
    }

    /// Shipped defaults: the disease-free scenario.
    pub fn disease_free() -> Self {
        Self::from_scenario(&sih::model::disease_free_scenario())
    }

    /// Shipped defaults with the supercritical incidence coefficient.
    pub fn endemic() -> Self {
        Self::from_scenario(&sih::model::endemic_scenario())
    }

    /// Set one key. Unknown keys are rejected; the caller supplies the
    /// error context (config line or flag).
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), UnknownKey> {
        let canonical = KEYS.iter().find(|k| **k == key).ok_or(UnknownKey)?;
        self.values.insert(canonical, value);
        Ok(())
    }

    pub fn set_dt(&mut self, dt: f64) {
        self.values.insert("dt", dt);
    }

    /// Validate and build the scenario.
    pub fn build(&self) -> Result<Scenario, CliError> {
        let get = |key: &str| *self.values.get(key).expect("draft holds every key");
        let horizon_raw = get("T");
        if horizon_raw < 1.0 || horizon_raw.fract() != 0.0 || horizon_raw > u32::MAX as f64 {
            return Err(CliError::Validation(format!(
                "T must be a positive whole number of months, got {horizon_raw}"
            )));
        }
        let epidemic = EpidemicParams {
            lambda: get("lambda"),
            alpha1: get("alpha1"),
            alpha2: get("alpha2"),
            beta: get("beta"),
            gamma: get("gamma"),
            mu1: get("mu1"),
            mu2: get("mu2"),
        };
        let policy = PolicyParams {
            horizon: horizon_raw as u32,
            dt: get("dt"),
            interest: get("interest_i"),
            omega: get("omega"),
            phi: get("phi"),
            benefit_hospital: get("benefit_H"),
            benefit_natural_death: get("benefit_D"),
            benefit_disease_death: get("benefit_Dstar"),
        };
        let initial = SihState::new(get("S0"), get("I0"), get("H0"), get("D0"), get("Dstar0"));
        Scenario::new(epidemic, policy, initial)
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}

/// Parse config text onto the shipped defaults.
pub fn parse_config(text: &str) -> Result<Scenario, CliError> {
    let mut draft = Draft::disease_free();
    apply_config(&mut draft, text)?;
    draft.build()
}

/// Apply config text to an existing draft.
pub fn apply_config(draft: &mut Draft, text: &str) -> Result<(), CliError> {
    let mut seen: Vec<String> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Parse {
                line: Some(line_no),
                message: format!("expected `key = value`, got `{line}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if seen.iter().any(|s| s == key) {
            return Err(CliError::Parse {
                line: Some(line_no),
                message: format!("duplicate key `{key}`"),
            });
        }
        let parsed: f64 = value.parse().map_err(|_| CliError::Parse {
            line: Some(line_no),
            message: format!("`{value}` is not a number"),
        })?;
        draft.set(key, parsed).map_err(|_| CliError::Parse {
            line: Some(line_no),
            message: format!("unknown key `{key}`"),
        })?;
        seen.push(key.to_string());
    }
    Ok(())
}

/// Emit a scenario as config text that parses back to the identical
/// scenario. Values use the shortest representation that round-trips.
pub fn emit_config(sc: &Scenario) -> String {
    let draft = Draft::from_scenario(sc);
    let mut out = String::new();
    for key in KEYS {
        let value = draft.values[key];
        if key == "T" {
            out.push_str(&format!("{key} = {}\n", value as u64));
        } else {
            out.push_str(&format!("{key} = {value}\n"));
        }
    }
    out
}
