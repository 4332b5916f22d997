// SPDX-License-Identifier: Apache-2.0

use super::NumericsError;

const MAX_ITER: usize = 200;

/// Solve `f(x) = target` for increasing `f` on `[a, b]` by bisection.
pub fn invert_monotone(
    f: impl Fn(f64) -> f64,
    target: f64,
    a: f64,
    b: f64,
) -> Result<f64, NumericsError> {
    invert_impl(&f, None::<&fn(f64) -> f64>, target, a, b)
}

/// Safeguarded Newton iteration: Newton steps with derivative `df`, falling
/// back to bisection whenever a step leaves the current bracket.
pub fn invert_monotone_with_derivative(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    target: f64,
    a: f64,
    b: f64,
) -> Result<f64, NumericsError> {
    invert_impl(&f, Some(&df), target, a, b)
}

fn invert_impl(
    f: &impl Fn(f64) -> f64,
    df: Option<&impl Fn(f64) -> f64>,
    target: f64,
    a: f64,
    b: f64,
) -> Result<f64, NumericsError> {
    let (fa, fb) = (f(a) - target, f(b) - target);
    if fa > 0.0 || fb < 0.0 {
        return Err(NumericsError::TargetOutOfBracket {
            target,
            lo: fa + target,
            hi: fb + target,
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut lo, mut hi) = (a, b);
    let mut x = match df {
        // linear interpolation start
        Some(_) => a + (b - a) * (-fa / (fb - fa)),
        None => 0.5 * (a + b),
    };
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }
    for _ in 0..MAX_ITER {
        let g = f(x) - target;
        if g == 0.0 {
            return Ok(x);
        }
        if g < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = 0.5 * (lo + hi);
        if let Some(df) = df {
            let d = df(x);
            if d > 0.0 {
                let newton = x - g / d;
                if newton > lo && newton < hi {
                    next = newton;
                }
            }
        }
        let step = (next - x).abs();
        x = next;
        if step <= 4.0 * f64::EPSILON * x.abs().max(1.0)
            || hi - lo <= 4.0 * f64::EPSILON * x.abs().max(1.0)
        {
            return Ok(x);
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_by_inversion() {
        let x = invert_monotone(|t| t * t, 4.0, 0.0, 3.0).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
        let x = invert_monotone_with_derivative(|t| t * t, |t| 2.0 * t, 4.0, 0.0, 3.0).unwrap();
        assert!((x - 2.0).abs() < 1e-14);
    }

    #[test]
    fn arc_length_of_cos_t_squared() {
        for s in [0.25, 1.0, 2.0, 7.5] {
            let t = invert_monotone_with_derivative(|t| t * t, |t| 2.0 * t, s, 0.0, 3.0).unwrap();
            assert!((t * t - s).abs() < 1e-12);
            assert!((t - libm::sqrt(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn identity() {
        assert!((invert_monotone(|t| t, 0.7, 0.0, 1.0).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn out_of_bracket() {
        assert!(matches!(
            invert_monotone(|t| t, 2.0, 0.0, 1.0),
            Err(NumericsError::TargetOutOfBracket { .. })
        ));
    }
}
