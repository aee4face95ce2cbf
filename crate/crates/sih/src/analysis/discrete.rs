//! Stability theory of the forward-Euler map: discrete Jacobian, eigenvalue
//! step-size thresholds at the disease-free equilibrium, and Schur-Cohn
//! conditions at the endemic equilibrium.

use super::cubic::cubic_root_moduli;
use super::{
    char_poly_coefficients, endemic_equilibrium, jacobian, relatively_close,
    basic_reproduction_number, Matrix3, StabilityVerdict, COEFFICIENT_XCHECK_TOL,
};
use crate::error::Error;
use crate::model::EpidemicParams;

/// How close an eigenvalue modulus must be to 1 to be classified as on the
/// unit circle.
pub const UNIT_MODULUS_TOL: f64 = 1e-10;

/// Convention note attached to the reported step-size bound: every term is
/// `2/rate` for the rate appearing in the matching eigenvalue of the
/// discrete Jacobian at the disease-free equilibrium, i.e. `mu1`,
/// `(alpha2+gamma+mu2)(1-R0)`, and `alpha1+mu2`. Verdicts are always
/// derived from the eigenvalue moduli themselves, never from the bound.
pub const DFE_THRESHOLD_NOTE: &str = "step-size bound terms are 2/mu1, \
2/((alpha2+gamma+mu2)(1-R0)) and 2/(alpha1+mu2), matching the rates in the \
eigenvalues of the Euler map at the disease-free equilibrium; verdicts come \
from the eigenvalue moduli directly";

/// How the endemic verdict of the Euler map was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscreteEeVerdict {
    /// The Schur-Cohn sufficient conditions hold.
    StableByCriterion,
    /// Criterion inconclusive; every characteristic root is inside the
    /// unit circle.
    StableByRoots,
    /// Criterion inconclusive; some characteristic root is outside the
    /// unit circle.
    UnstableByRoots,
    /// A characteristic root sits on the unit circle (within
    /// [`UNIT_MODULUS_TOL`]).
    NonHyperbolicByRoots,
}

/// The three Schur-Cohn condition values for the characteristic cubic
/// `r^3 + A1 r^2 + A2 r + A3` at the endemic equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurCohnConditions {
    /// `1 + A1 + A2 + A3`, the cubic at r = 1. Provably positive whenever
    /// R0 > 1: it collapses to `beta*I_E*mu2*(alpha1+gamma+mu2)*dt^3`.
    pub cond_plus: f64,
    /// `1 - A1 + A2 - A3`, the negated cubic at r = -1.
    pub cond_minus: f64,
    /// `(1 - A3^2) - |A2 - A1*A3|`; positive means the inner root pair is
    /// inside the unit circle.
    pub cond_inner: f64,
}

impl SchurCohnConditions {
    /// True when all three conditions certify stability.
    pub fn criterion_holds(&self) -> bool {
        self.cond_plus > 0.0 && self.cond_minus > 0.0 && self.cond_inner > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteDfeClassification {
    /// Eigenvalues of the Euler map at the disease-free equilibrium:
    /// `(1 - mu1*dt, 1 - (alpha2+gamma+mu2)(1-R0)*dt, 1 - (alpha1+mu2)*dt)`.
    pub eigenvalues: (f64, f64, f64),
    /// Largest step size below which all three eigenvalues stay inside the
    /// unit circle. `None` when R0 >= 1: the middle eigenvalue then exceeds
    /// 1 for every positive step, so no stabilising step size exists.
    /// See [`DFE_THRESHOLD_NOTE`] for the term convention.
    pub dt_threshold: Option<f64>,
    pub verdict: StabilityVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteEndemicClassification {
    /// Characteristic coefficients (A1, A2, A3) of the Euler map at the
    /// endemic equilibrium.
    pub coefficients: (f64, f64, f64),
    pub schur_cohn: SchurCohnConditions,
    pub verdict: DiscreteEeVerdict,
}

/// Full discrete-map analysis for one parameter set and step size.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteStabilityReport {
    pub dt: f64,
    pub dfe_eigenvalues: (f64, f64, f64),
    pub dfe_dt_threshold: Option<f64>,
    pub dfe_verdict: StabilityVerdict,
    pub ee_coefficients: Option<(f64, f64, f64)>,
    pub schur_cohn: Option<SchurCohnConditions>,
    pub ee_verdict: Option<DiscreteEeVerdict>,
}

/// Jacobian of the Euler map: identity plus `dt` times the continuous
/// Jacobian, entrywise.
pub fn discrete_jacobian(p: &EpidemicParams, dt: f64, at: (f64, f64, f64)) -> Matrix3 {
    let j = jacobian(p, at);
    let mut out = [[0.0; 3]; 3];
    for (row, j_row) in out.iter_mut().zip(j.iter()) {
        for (entry, j_entry) in row.iter_mut().zip(j_row.iter()) {
            *entry = dt * j_entry;
        }
    }
    out[0][0] += 1.0;
    out[1][1] += 1.0;
    out[2][2] += 1.0;
    out
}

fn modulus_verdict(moduli: &[f64]) -> StabilityVerdict {
    if moduli.iter().any(|m| (m - 1.0).abs() <= UNIT_MODULUS_TOL) {
        StabilityVerdict::NonHyperbolic
    } else if moduli.iter().all(|m| *m < 1.0) {
        StabilityVerdict::Stable
    } else {
        StabilityVerdict::Unstable
    }
}

/// Classify the disease-free equilibrium of the Euler map from its
/// closed-form eigenvalues, and report the stabilising step-size bound
/// where one exists.
pub fn classify_dfe_discrete(p: &EpidemicParams, dt: f64) -> DiscreteDfeClassification {
    let r0 = basic_reproduction_number(p);
    let eigenvalues = (
        1.0 - p.mu1 * dt,
        1.0 - p.infected_outflow() * (1.0 - r0) * dt,
        1.0 - p.hospitalised_outflow() * dt,
    );
    let dt_threshold = if r0 < 1.0 {
        Some(
            (2.0 / p.mu1)
                .min(2.0 / (p.infected_outflow() * (1.0 - r0)))
                .min(2.0 / p.hospitalised_outflow()),
        )
    } else {
        None
    };
    let moduli = [
        eigenvalues.0.abs(),
        eigenvalues.1.abs(),
        eigenvalues.2.abs(),
    ];
    DiscreteDfeClassification {
        eigenvalues,
        dt_threshold,
        verdict: modulus_verdict(&moduli),
    }
}

/// Characteristic coefficients of the Euler map at the endemic equilibrium,
/// in closed form in terms of `beta*I_E`.
fn discrete_endemic_coefficients(p: &EpidemicParams, dt: f64, i_e: f64) -> (f64, f64, f64) {
    let bi = p.beta * i_e;
    let trace_rate = bi + p.alpha1 + p.mu1 + p.mu2;
    let minor_rate = bi * (p.alpha1 + p.gamma + 2.0 * p.mu2) + p.mu1 * (p.alpha1 + p.mu2);
    let det_rate = bi * p.mu2 * (p.alpha1 + p.gamma + p.mu2);
    let a1 = trace_rate * dt - 3.0;
    let a2 = minor_rate * dt * dt - 2.0 * trace_rate * dt + 3.0;
    let a3 = det_rate * dt * dt * dt - minor_rate * dt * dt + trace_rate * dt - 1.0;
    (a1, a2, a3)
}

/// Schur-Cohn classification of the endemic equilibrium of the Euler map.
/// Absent when R0 <= 1. When the Schur-Cohn conditions are inconclusive, the
/// characteristic cubic is solved outright so every input gets a definite
/// verdict; the verdict records which route decided it. The coefficients are
/// derived twice (closed form vs characteristic polynomial of the discrete
/// Jacobian); disagreement beyond [`COEFFICIENT_XCHECK_TOL`] relative is an
/// `InternalInconsistency`.
pub fn classify_ee_discrete(
    p: &EpidemicParams,
    dt: f64,
) -> Result<Option<DiscreteEndemicClassification>, Error> {
    let r0 = basic_reproduction_number(p);
    if r0 <= 1.0 {
        return Ok(None);
    }
    let ee = endemic_equilibrium(p).expect("R0 > 1 guarantees the endemic equilibrium");
    let closed = discrete_endemic_coefficients(p, dt, ee.infected);
    let from_jacobian = char_poly_coefficients(&discrete_jacobian(
        p,
        dt,
        (ee.susceptible, ee.infected, ee.hospitalised),
    ));
    for (context, lhs, rhs) in [
        ("discrete endemic coefficient A1", closed.0, from_jacobian.0),
        ("discrete endemic coefficient A2", closed.1, from_jacobian.1),
        ("discrete endemic coefficient A3", closed.2, from_jacobian.2),
    ] {
        if !relatively_close(lhs, rhs, COEFFICIENT_XCHECK_TOL) {
            return Err(Error::InternalInconsistency { context, lhs, rhs });
        }
    }
    let (a1, a2, a3) = closed;
    let schur_cohn = SchurCohnConditions {
        cond_plus: 1.0 + a1 + a2 + a3,
        cond_minus: 1.0 - a1 + a2 - a3,
        cond_inner: (1.0 - a3 * a3) - (a2 - a1 * a3).abs(),
    };
    let verdict = if schur_cohn.criterion_holds() {
        DiscreteEeVerdict::StableByCriterion
    } else {
        let moduli = cubic_root_moduli(a1, a2, a3);
        if moduli.iter().any(|m| (m - 1.0).abs() <= UNIT_MODULUS_TOL) {
            DiscreteEeVerdict::NonHyperbolicByRoots
        } else if moduli.iter().all(|m| *m < 1.0) {
            DiscreteEeVerdict::StableByRoots
        } else {
            DiscreteEeVerdict::UnstableByRoots
        }
    };
    Ok(Some(DiscreteEndemicClassification {
        coefficients: closed,
        schur_cohn,
        verdict,
    }))
}

/// Full discrete-map analysis for one parameter set and step size.
pub fn discrete_report(p: &EpidemicParams, dt: f64) -> Result<DiscreteStabilityReport, Error> {
    let dfe = classify_dfe_discrete(p, dt);
    let ee = classify_ee_discrete(p, dt)?;
    Ok(DiscreteStabilityReport {
        dt,
        dfe_eigenvalues: dfe.eigenvalues,
        dfe_dt_threshold: dfe.dt_threshold,
        dfe_verdict: dfe.verdict,
        ee_coefficients: ee.map(|c| c.coefficients),
        schur_cohn: ee.map(|c| c.schur_cohn),
        ee_verdict: ee.map(|c| c.verdict),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beta: f64) -> EpidemicParams {
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

    #[test]
    fn discrete_jacobian_is_euler_shift_of_continuous() {
        let p = params(0.003);
        let at = (321.0, 17.0, 42.0);
        let dt = 0.05;
        let j = jacobian(&p, at);
        let jd = discrete_jacobian(&p, dt, at);
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { 1.0 + dt * j[r][c] } else { dt * j[r][c] };
                assert!((jd[r][c] - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn discrete_jacobian_dfe_entry_and_small_dt_limit() {
        let p = params(0.001);
        let dfe_s = p.lambda / p.mu1;
        let jd = discrete_jacobian(&p, 0.05, (dfe_s, 0.0, 0.0));
        assert!((jd[0][0] - 0.9996275).abs() < 1e-10);

        let tiny = discrete_jacobian(&p, 1e-300, (dfe_s, 0.0, 0.0));
        for (r, row) in tiny.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let expected = if r == c { 1.0 } else { 0.0 };
                assert!((entry - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dfe_verdicts_follow_theorem_branches() {
        let subcritical = classify_dfe_discrete(&params(0.001), 0.05);
        assert_eq!(subcritical.verdict, StabilityVerdict::Stable);
        let bound = subcritical.dt_threshold.unwrap();
        assert!(bound > 0.05);

        // supercritical: unstable for every step size
        for dt in [0.01, 0.05, 1.0, 10.0] {
            let class = classify_dfe_discrete(&params(0.003), dt);
            assert_eq!(class.verdict, StabilityVerdict::Unstable);
            assert!(class.eigenvalues.1 > 1.0);
            assert!(class.dt_threshold.is_none());
        }

        // boundary of the threshold set: |first eigenvalue| = 1
        let p = params(0.001);
        let class = classify_dfe_discrete(&p, 2.0 / p.mu1);
        assert_eq!(class.verdict, StabilityVerdict::NonHyperbolic);
    }

    #[test]
    fn threshold_is_the_binding_rate() {
        let p = params(0.001);
        let class = classify_dfe_discrete(&p, 0.05);
        let r0 = basic_reproduction_number(&p);
        let expected = (2.0 / p.mu1)
            .min(2.0 / (p.infected_outflow() * (1.0 - r0)))
            .min(2.0 / p.hospitalised_outflow());
        assert_eq!(class.dt_threshold, Some(expected));
        // just below the bound: stable; just above: not stable
        let below = classify_dfe_discrete(&p, expected * 0.999);
        assert_eq!(below.verdict, StabilityVerdict::Stable);
        let above = classify_dfe_discrete(&p, expected * 1.001);
        assert_ne!(above.verdict, StabilityVerdict::Stable);
    }

    #[test]
    fn endemic_schur_cohn_identity_and_verdict() {
        let p = params(0.003);
        let dt = 0.05;
        let class = classify_ee_discrete(&p, dt).unwrap().unwrap();
        let ee = endemic_equilibrium(&p).unwrap();
        let identity = p.beta * ee.infected * p.mu2 * (p.alpha1 + p.gamma + p.mu2) * dt * dt * dt;
        assert!((class.schur_cohn.cond_plus - identity).abs() <= 1e-9 * identity);
        assert!((class.schur_cohn.cond_plus - 6.16e-8).abs() < 1e-9);
        assert_eq!(class.verdict, DiscreteEeVerdict::StableByCriterion);

        assert!(classify_ee_discrete(&params(0.001), dt).unwrap().is_none());
    }

    #[test]
    fn small_dt_degenerates_to_identity_map() {
        let p = params(0.003);
        let class = classify_ee_discrete(&p, 1e-12).unwrap().unwrap();
        let (a1, a2, a3) = class.coefficients;
        assert!((a1 - (-3.0)).abs() < 1e-9);
        assert!((a2 - 3.0).abs() < 1e-9);
        assert!((a3 - (-1.0)).abs() < 1e-9);
        // the characteristic roots collapse onto a triple root at 1; a
        // triple root is resolvable only to ~cbrt(machine epsilon), so the
        // verdict is not meaningful here and only the moduli are checked
        let moduli = super::super::cubic::cubic_root_moduli(a1, a2, a3);
        for m in moduli {
            assert!((m - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn oversized_step_destabilises_the_endemic_map() {
        let p = params(0.003);
        let class = classify_ee_discrete(&p, 40.0).unwrap().unwrap();
        assert!(!class.schur_cohn.criterion_holds());
        assert_eq!(class.verdict, DiscreteEeVerdict::UnstableByRoots);
    }

    #[test]
    fn report_composes_both_classifications() {
        let report = discrete_report(&params(0.003), 0.05).unwrap();
        assert_eq!(report.dfe_verdict, StabilityVerdict::Unstable);
        assert_eq!(report.ee_verdict, Some(DiscreteEeVerdict::StableByCriterion));
        assert!(report.dfe_dt_threshold.is_none());
        let report = discrete_report(&params(0.001), 0.05).unwrap();
        assert_eq!(report.dfe_verdict, StabilityVerdict::Stable);
        assert!(report.ee_verdict.is_none());
        assert!(report.dfe_dt_threshold.is_some());
    }
}
