// SPDX-License-Identifier: Apache-2.0

use super::NumericsError;

const DEFAULT_MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance
/// `tol`. The error bound is the usual heuristic: a panel is accepted when
/// `|S(left) + S(right) − S(whole)| ≤ 15·tol_panel`, and the Richardson term is
/// added back.
pub fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError> {
    quad_with_depth(f, a, b, tol, DEFAULT_MAX_DEPTH)
}

pub fn quad_with_depth(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64, NumericsError> {
    if a == b {
        return Ok(0.0);
    }
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, NumericsError> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(NumericsError::MaxSubdivisions { a, b });
    }
    // stop once the panel can no longer be split in floating point
    if delta.abs() <= 15.0 * tol || m <= a || m >= b || lm <= a || rm >= b {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(NumericsError::MaxSubdivisions { a, b });
    }
    Ok(simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math;

    #[test]
    fn sine_over_half_period() {
        let v = quad(math::sin, 0.0, core::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn constant_curvature_angle() {
        let r = 2.5;
        let v = quad(|_| 1.0 / r, 0.0, 3.0, 1e-12).unwrap();
        assert!((v - 3.0 / r).abs() < 1e-14);
    }

    #[test]
    fn linear_integrand_gives_square() {
        for u in [0.3, 1.0, 4.0] {
            let v = quad(|w| 2.0 * w, 0.0, u, 1e-12).unwrap();
            assert!((v - u * u).abs() < 1e-12);
        }
    }

    #[test]
    fn reversed_interval_is_negative() {
        let v = quad(|w| w, 1.0, 0.0, 1e-12).unwrap();
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn singular_integrand_fails() {
        let r = quad_with_depth(|w| 1.0 / w, -1.0, 1.0, 1e-12, 10);
        assert!(matches!(r, Err(NumericsError::MaxSubdivisions { .. })));
    }
}
