//! Closed-form solver for real-coefficient monic cubics. Cardano /
//! trigonometric first root, Newton polish, then quadratic deflation.

/// Roots of `r^3 + a1 r^2 + a2 r + a3` as (re, im) pairs. The first entry
/// is always a real root.
pub(crate) fn cubic_roots(a1: f64, a2: f64, a3: f64) -> [(f64, f64); 3] {
    // depressed form t^3 + p t + q, r = t - a1/3
    let shift = a1 / 3.0;
    let p = a2 - a1 * a1 / 3.0;
    let q = 2.0 * a1 * a1 * a1 / 27.0 - a1 * a2 / 3.0 + a3;

    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    let t1 = if disc >= 0.0 {
        let root = disc.sqrt();
        (-q / 2.0 + root).cbrt() + (-q / 2.0 - root).cbrt()
    } else {
        // three distinct real roots; take the largest
        let m = (-p / 3.0).sqrt();
        let cos_arg = ((-q / 2.0) / (m * m * m)).clamp(-1.0, 1.0);
        2.0 * m * (cos_arg.acos() / 3.0).cos()
    };
    let mut real_root = t1 - shift;

    // Newton polish on the original cubic; skipped near multiple roots
    // where the derivative degenerates.
    for _ in 0..3 {
        let f = ((real_root + a1) * real_root + a2) * real_root + a3;
        let df = (3.0 * real_root + 2.0 * a1) * real_root + a2;
        if df.abs() < 1e-30 {
            break;
        }
        let next = real_root - f / df;
        if !next.is_finite() {
            break;
        }
        real_root = next;
    }

    // synthetic division by (r - real_root): r^2 + b r + c
    let b = a1 + real_root;
    let c = a2 + b * real_root;
    let quad_disc = b * b - 4.0 * c;
    if quad_disc >= 0.0 {
        let root = quad_disc.sqrt();
        // avoid cancellation in the smaller-magnitude root
        let big = -(b + b.signum() * root) / 2.0;
        let small = if big == 0.0 { 0.0 } else { c / big };
        [(real_root, 0.0), (big, 0.0), (small, 0.0)]
    } else {
        let re = -b / 2.0;
        let im = (-quad_disc).sqrt() / 2.0;
        [(real_root, 0.0), (re, im), (re, -im)]
    }
}

/// Moduli of the three roots.
pub(crate) fn cubic_root_moduli(a1: f64, a2: f64, a3: f64) -> [f64; 3] {
    cubic_roots(a1, a2, a3).map(|(re, im)| re.hypot(im))
}
