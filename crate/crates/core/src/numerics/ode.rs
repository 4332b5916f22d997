// SPDX-License-Identifier: Apache-2.0

use alloc::vec;
use alloc::vec::Vec;

use super::NumericsError;
use crate::math;

/// A first-order system `y' = f(s, y)`.
pub trait OdeSystem {
    fn dim(&self) -> usize;

    fn rhs(&self, s: f64, y: &[f64], dy: &mut [f64]);

    /// Called on the state after every accepted step, e.g. to pull a moving
    /// frame back onto the orthonormal manifold.
    fn project(&self, _y: &mut [f64]) {}
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Classical fourth-order Runge–Kutta with a fixed step. The span is split
    /// into `ceil(len / step)` equal steps so the last one lands on the end.
    Rk4 { step: f64 },
    /// Dormand–Prince 5(4) with error control.
    Rk45 { rtol: f64, atol: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub method: Method,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::Rk4 { step: 1e-3 },
            max_steps: 10_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn rk4(step: f64) -> Self {
        Self {
            method: Method::Rk4 { step },
            ..Self::default()
        }
    }

    pub fn rk45(rtol: f64, atol: f64) -> Self {
        Self {
            method: Method::Rk45 { rtol, atol },
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), NumericsError> {
        let ok = match self.method {
            Method::Rk4 { step } => step > 0.0 && step.is_finite(),
            Method::Rk45 { rtol, atol } => rtol > 0.0 && atol > 0.0,
        };
        if !ok {
            return Err(NumericsError::InvalidConfig(
                "step and tolerances must be positive",
            ));
        }
        if self.max_steps == 0 {
            return Err(NumericsError::InvalidConfig("max_steps must be positive"));
        }
        Ok(())
    }
}

/// Accepted steps of an integration with cubic Hermite interpolation between
/// them.
#[derive(Clone, Debug)]
pub struct DenseSolution {
    dim: usize,
    nodes: Vec<f64>,
    states: Vec<f64>,
    slopes: Vec<f64>,
}

impl DenseSolution {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn span(&self) -> (f64, f64) {
        (self.nodes[0], *self.nodes.last().unwrap())
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn state_at_node(&self, i: usize) -> &[f64] {
        &self.states[i * self.dim..(i + 1) * self.dim]
    }

    /// Interpolated state at `s`, clamped to the span.
    pub fn eval_into(&self, s: f64, out: &mut [f64]) {
        let n = self.nodes.len();
        if n == 1 {
            out.copy_from_slice(self.state_at_node(0));
            return;
        }
        let k = self.nodes.partition_point(|&x| x <= s).clamp(1, n - 1) - 1;
        let (s0, s1) = (self.nodes[k], self.nodes[k + 1]);
        let h = s1 - s0;
        let t = ((s - s0) / h).clamp(0.0, 1.0);
        if t == 0.0 {
            out.copy_from_slice(self.state_at_node(k));
            return;
        }
        if t == 1.0 {
            out.copy_from_slice(self.state_at_node(k + 1));
            return;
        }
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        let d = self.dim;
        for (i, o) in out.iter_mut().enumerate() {
            let y0 = self.states[k * d + i];
            let y1 = self.states[(k + 1) * d + i];
            let m0 = self.slopes[k * d + i];
            let m1 = self.slopes[(k + 1) * d + i];
            *o = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
        }
    }

    pub fn eval(&self, s: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.eval_into(s, &mut out);
        out
    }
}

struct Recorder {
    dim: usize,
    nodes: Vec<f64>,
    states: Vec<f64>,
    slopes: Vec<f64>,
}

impl Recorder {
    fn push(&mut self, s: f64, y: &[f64], dy: &[f64]) {
        self.nodes.push(s);
        self.states.extend_from_slice(y);
        self.slopes.extend_from_slice(dy);
    }

    fn finish(self) -> DenseSolution {
        DenseSolution {
            dim: self.dim,
            nodes: self.nodes,
            states: self.states,
            slopes: self.slopes,
        }
    }
}

/// Integrate `sys` from `y0` at `span.0` to `span.1` (forward only).
pub fn ode_solve(
    sys: &impl OdeSystem,
    y0: &[f64],
    span: (f64, f64),
    cfg: &IntegratorConfig,
) -> Result<DenseSolution, NumericsError> {
    cfg.validate()?;
    let (s0, s1) = span;
    let n = sys.dim();
    if y0.len() != n {
        return Err(NumericsError::InvalidConfig(
            "initial state has the wrong dimension",
        ));
    }
    if !(s1 >= s0) {
        return Err(NumericsError::InvalidConfig("span must be increasing"));
    }
    let mut y = y0.to_vec();
    sys.project(&mut y);
    let mut dy = vec![0.0; n];
    sys.rhs(s0, &y, &mut dy);
    check_finite(s0, &y, &dy)?;
    let mut rec = Recorder {
        dim: n,
        nodes: Vec::new(),
        states: Vec::new(),
        slopes: Vec::new(),
    };
    rec.push(s0, &y, &dy);
    if s1 == s0 {
        return Ok(rec.finish());
    }
    match cfg.method {
        Method::Rk4 { step } => rk4(sys, &mut y, &mut dy, span, step, cfg.max_steps, &mut rec)?,
        Method::Rk45 { rtol, atol } => dopri5(
            sys,
            &mut y,
            &mut dy,
            span,
            rtol,
            atol,
            cfg.max_steps,
            &mut rec,
        )?,
    }
    Ok(rec.finish())
}

fn check_finite(s: f64, y: &[f64], dy: &[f64]) -> Result<(), NumericsError> {
    if y.iter().chain(dy).all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(NumericsError::NonFiniteState { s })
    }
}

fn axpy(out: &mut [f64], y: &[f64], terms: &[(f64, &[f64])], h: f64) {
    for i in 0..out.len() {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] = y[i] + h * acc;
    }
}

fn rk4(
    sys: &impl OdeSystem,
    y: &mut [f64],
    dy: &mut [f64],
    (s0, s1): (f64, f64),
    step: f64,
    max_steps: usize,
    rec: &mut Recorder,
) -> Result<(), NumericsError> {
    let steps = math::ceil((s1 - s0) / step).max(1.0) as usize;
    if steps > max_steps {
        return Err(NumericsError::MaxSteps {
            s: s0,
            steps: max_steps,
        });
    }
    let h = (s1 - s0) / steps as f64;
    let n = y.len();
    let (mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for i in 0..steps {
        let s = s0 + i as f64 * h;
        let k1 = dy.to_vec();
        axpy(&mut tmp, y, &[(0.5, &k1)], h);
        sys.rhs(s + 0.5 * h, &tmp, &mut k2);
        axpy(&mut tmp, y, &[(0.5, &k2)], h);
        sys.rhs(s + 0.5 * h, &tmp, &mut k3);
        axpy(&mut tmp, y, &[(1.0, &k3)], h);
        sys.rhs(s + h, &tmp, &mut k4);
        let sixth = 1.0 / 6.0;
        axpy(
            &mut tmp,
            y,
            &[
                (sixth, &k1),
                (2.0 * sixth, &k2),
                (2.0 * sixth, &k3),
                (sixth, &k4),
            ],
            h,
        );
        // the end point is hit exactly, not by accumulation
        let s_next = if i + 1 == steps {
            s1
        } else {
            s0 + (i + 1) as f64 * h
        };
        y.copy_from_slice(&tmp);
        sys.project(y);
        sys.rhs(s_next, y, dy);
        check_finite(s_next, y, dy)?;
        rec.push(s_next, y, dy);
    }
    Ok(())
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[allow(clippy::too_many_arguments)]
fn dopri5(
    sys: &impl OdeSystem,
    y: &mut [f64],
    dy: &mut [f64],
    (s0, s1): (f64, f64),
    rtol: f64,
    atol: f64,
    max_steps: usize,
    rec: &mut Recorder,
) -> Result<(), NumericsError> {
    let n = y.len();
    let mut k: [Vec<f64>; 7] = core::array::from_fn(|_| vec![0.0; n]);
    let mut tmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    let mut s = s0;
    let mut h = ((s1 - s0) * 1e-3)
        .min(0.01 * math::powf(rtol, 0.2))
        .max(1e-12 * (s1 - s0));
    let mut steps = 0;
    while s < s1 {
        if steps >= max_steps {
            return Err(NumericsError::MaxSteps { s, steps });
        }
        steps += 1;
        let last = s + h >= s1;
        if last {
            h = s1 - s;
        }
        k[0].copy_from_slice(dy);
        let rows: [&[f64]; 5] = [&A2, &A3, &A4, &A5, &A6];
        for (stage, row) in rows.iter().enumerate() {
            let i = stage + 1;
            for j in 0..n {
                let mut acc = 0.0;
                for (c, kk) in row.iter().zip(k.iter()) {
                    acc += c * kk[j];
                }
                tmp[j] = y[j] + h * acc;
            }
            sys.rhs(s + C[i] * h, &tmp, &mut k[i]);
        }
        for j in 0..n {
            let mut acc = 0.0;
            for (c, kk) in B.iter().zip(k.iter()).take(6) {
                acc += c * kk[j];
            }
            ynew[j] = y[j] + h * acc;
        }
        let s_next = if last { s1 } else { s + h };
        sys.rhs(s_next, &ynew, &mut k[6]);
        let mut err = 0.0;
        for j in 0..n {
            let mut e = 0.0;
            for (c, kk) in E.iter().zip(k.iter()) {
                e += c * kk[j];
            }
            let sc = atol + rtol * y[j].abs().max(ynew[j].abs());
            err += (h * e / sc) * (h * e / sc);
        }
        let err = math::sqrt(err / n as f64);
        if !err.is_finite() {
            h *= 0.1;
            if h < 1e-14 * (s1 - s0).max(1.0) {
                return Err(NumericsError::NonFiniteState { s });
            }
            continue;
        }
        let fac = if err == 0.0 {
            5.0
        } else {
            (0.9 * math::powf(err, -0.2)).clamp(0.2, 5.0)
        };
        if err <= 1.0 {
            y.copy_from_slice(&ynew);
            sys.project(y);
            sys.rhs(s_next, y, dy);
            check_finite(s_next, y, dy)?;
            s = s_next;
            rec.push(s, y, dy);
        }
        h *= fac;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Growth;
    impl OdeSystem for Growth {
        fn dim(&self) -> usize {
            1
        }
        fn rhs(&self, _s: f64, y: &[f64], dy: &mut [f64]) {
            dy[0] = y[0];
        }
    }

    #[test]
    fn exponential_rk4() {
        let sol = ode_solve(&Growth, &[1.0], (0.0, 1.0), &IntegratorConfig::rk4(1e-3)).unwrap();
        assert!((sol.eval(1.0)[0] - core::f64::consts::E).abs() < 1e-8);
        assert_eq!(sol.span(), (0.0, 1.0));
    }

    #[test]
    fn exponential_rk45() {
        let sol = ode_solve(
            &Growth,
            &[1.0],
            (0.0, 1.0),
            &IntegratorConfig::rk45(1e-10, 1e-12),
        )
        .unwrap();
        assert!((sol.eval(1.0)[0] - core::f64::consts::E).abs() < 1e-8);
        assert!(sol.nodes().len() < 1000);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let err = |h: f64| {
            let sol = ode_solve(&Growth, &[1.0], (0.0, 1.0), &IntegratorConfig::rk4(h)).unwrap();
            (sol.eval(1.0)[0] - core::f64::consts::E).abs()
        };
        let ratio = err(0.02) / err(0.01);
        assert!((ratio - 16.0).abs() < 1.0, "ratio {ratio}");
    }

    #[test]
    fn dense_output_between_nodes() {
        let sol = ode_solve(&Growth, &[1.0], (0.0, 1.0), &IntegratorConfig::rk4(1e-2)).unwrap();
        for s in [0.0051, 0.333, 0.77777] {
            let exact = libm::exp(s);
            assert!((sol.eval(s)[0] - exact).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_configs() {
        assert!(ode_solve(&Growth, &[1.0], (0.0, 1.0), &IntegratorConfig::rk4(0.0)).is_err());
        assert!(ode_solve(
            &Growth,
            &[1.0, 2.0],
            (0.0, 1.0),
            &IntegratorConfig::default()
        )
        .is_err());
        let cfg = IntegratorConfig {
            max_steps: 10,
            ..IntegratorConfig::rk4(1e-3)
        };
        assert!(matches!(
            ode_solve(&Growth, &[1.0], (0.0, 1.0), &cfg),
            Err(NumericsError::MaxSteps { .. })
        ));
    }

    struct Blowup;
    impl OdeSystem for Blowup {
        fn dim(&self) -> usize {
            1
        }
        fn rhs(&self, _s: f64, y: &[f64], dy: &mut [f64]) {
            dy[0] = y[0] * y[0];
        }
    }

    #[test]
    fn non_finite_state_is_reported() {
        let r = ode_solve(&Blowup, &[1.0], (0.0, 2.0), &IntegratorConfig::rk4(0.1));
        assert!(matches!(r, Err(NumericsError::NonFiniteState { .. })));
    }
}
