//! Stability analysis of the model, in continuous time (equilibria, basic
//! reproduction number, Routh-Hurwitz conditions) and for the forward-Euler
//! map (eigenvalue step-size thresholds, Schur-Cohn conditions).

pub mod continuous;
mod cubic;
pub mod discrete;

pub use continuous::*;
pub use discrete::*;

pub type Matrix2 = [[f64; 2]; 2];
pub type Matrix3 = [[f64; 3]; 3];

/// Coefficients (a1, a2, a3) of the characteristic polynomial
/// `r^3 + a1 r^2 + a2 r + a3` of a 3x3 matrix: negated trace, sum of
/// principal 2x2 minors, negated determinant.
pub(crate) fn char_poly_coefficients(m: &Matrix3) -> (f64, f64, f64) {
    let a1 = -(m[0][0] + m[1][1] + m[2][2]);
    let a2 = (m[0][0] * m[1][1] - m[0][1] * m[1][0])
        + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
        + (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
    let a3 = -det3(m);
    (a1, a2, a3)
}

pub(crate) fn det3(m: &Matrix3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Largest eigenvalue modulus of a real 2x2 matrix.
pub(crate) fn spectral_radius_2x2(m: &Matrix2) -> f64 {
    let trace = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = trace * trace - 4.0 * det;
    if disc >= 0.0 {
        let root = disc.sqrt();
        let a = (trace + root) / 2.0;
        let b = (trace - root) / 2.0;
        a.abs().max(b.abs())
    } else {
        // complex pair: |lambda|^2 = det
        det.sqrt()
    }
}

/// `|lhs - rhs| <= tol * max(|lhs|, |rhs|)`.
pub(crate) fn relatively_close(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() <= tol * lhs.abs().max(rhs.abs())
}
