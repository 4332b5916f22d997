// SPDX-License-Identifier: Apache-2.0

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{CurveJet, CurveSource, RealCurve, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::numerics::{invert_monotone_with_derivative, quad, NumericsError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReparamOptions {
    /// Arc-length value assigned to the start of the domain.
    pub s_start: f64,
    /// Absolute tolerance of each panel quadrature.
    pub quad_tol: f64,
    /// Number of panels in the cumulative arc-length table.
    pub panels: usize,
    /// Grid size for the admissibility check.
    pub grid: usize,
    /// Admissibility tolerance; `None` picks one from the jet source.
    pub tol: Option<f64>,
}

impl Default for ReparamOptions {
    fn default() -> Self {
        Self {
            s_start: 0.0,
            quad_tol: 1e-13,
            panels: 64,
            grid: DEFAULT_GRID,
            tol: None,
        }
    }
}

/// The map `t ↦ s = s_start + ∫ |c'|` and its inverse, built on a panel table
/// so each inversion only integrates inside one panel.
pub struct ArcLengthMap {
    curve: RealCurve,
    nodes: Vec<f64>,
    cumulative: Vec<f64>,
    s_start: f64,
    quad_tol: f64,
}

impl ArcLengthMap {
    pub fn new(curve: RealCurve, domain: (f64, f64), opts: &ReparamOptions) -> Result<Self> {
        let n = opts.panels.max(1);
        let (t0, t1) = domain;
        let nodes: Vec<f64> = (0..=n)
            .map(|i| t0 + (t1 - t0) * i as f64 / n as f64)
            .collect();
        let mut map = Self {
            curve,
            nodes,
            cumulative: Vec::with_capacity(n + 1),
            s_start: opts.s_start,
            quad_tol: opts.quad_tol,
        };
        let mut total = 0.0;
        map.cumulative.push(0.0);
        for w in map.nodes.windows(2) {
            total += map.integrate(w[0], w[1])?;
            map.cumulative.push(total);
        }
        Ok(map)
    }

    fn speed(&self, t: f64) -> f64 {
        self.curve.jet(t, 1).map_or(f64::NAN, |j| j.d1.norm())
    }

    fn integrate(&self, a: f64, b: f64) -> Result<f64> {
        let failure = RefCell::new(None);
        let value = quad(
            |t| {
                let v = self.speed(t);
                if !v.is_finite() {
                    failure
                        .borrow_mut()
                        .get_or_insert(NumericsError::NonFiniteState { s: t });
                }
                v
            },
            a,
            b,
            self.quad_tol,
        );
        match (failure.into_inner(), value) {
            (Some(e), _) | (None, Err(e)) => Err(e.into()),
            (None, Ok(v)) => Ok(v),
        }
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    pub fn arclength_range(&self) -> (f64, f64) {
        (self.s_start, self.s_start + self.length())
    }

    /// Arc-length value at original parameter `t`.
    pub fn arclength(&self, t: f64) -> Result<f64> {
        let k = self
            .nodes
            .partition_point(|&x| x <= t)
            .clamp(1, self.nodes.len() - 1)
            - 1;
        Ok(self.s_start + self.cumulative[k] + self.integrate(self.nodes[k], t)?)
    }

    /// Original parameter at arc-length value `s`.
    pub fn parameter(&self, s: f64) -> Result<f64> {
        let (lo, hi) = self.arclength_range();
        let slack = 1e-12 * (hi - lo).max(1.0);
        if !(s >= lo - slack && s <= hi + slack) {
            return Err(Error::OutOfDomain {
                s,
                min: lo,
                max: hi,
            });
        }
        let target = (s - self.s_start).clamp(0.0, self.length());
        let k = self
            .cumulative
            .partition_point(|&c| c <= target)
            .clamp(1, self.nodes.len() - 1)
            - 1;
        let (a, b) = (self.nodes[k], self.nodes[k + 1]);
        let base = self.cumulative[k];
        let target = target.clamp(base, self.cumulative[k + 1]);
        if target == base {
            return Ok(a);
        }
        let failure = RefCell::new(None);
        let t = invert_monotone_with_derivative(
            |t| match self.integrate(a, t) {
                Ok(v) => base + v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            |t| self.speed(t),
            target,
            a,
            b,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(t?)
    }
}

/// `g = f ∘ φ` where `φ` is the inverse of the arc-length map. Jets follow
/// from the chain rule with `v = |c'|`:
/// `φ' = 1/v`, `φ'' = −v'/v³`, `φ''' = −v''/v⁴ + 3v'²/v⁵`.
pub(super) struct Reparametrized {
    pub inner: RealCurve,
    pub map: Arc<ArcLengthMap>,
}

impl CurveSource for Reparametrized {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let t = self.map.parameter(s)?;
        let f = self.inner.jet(t, order)?;
        if order == 0 {
            return Ok(f);
        }
        let c = self.map.curve.jet(t, order)?;
        let v = c.d1.norm();
        let p1 = 1.0 / v;
        let mut g = CurveJet {
            position: f.position,
            d1: f.d1 * p1,
            ..CurveJet::default()
        };
        if order >= 2 {
            let c12 = c.d1.dot(&c.d2);
            let v1 = c12 / v;
            let p2 = -v1 / (v * v * v);
            g.d2 = f.d2 * (p1 * p1) + f.d1 * p2;
            if order >= 3 {
                let v2 = (c.d2.norm_squared() + c.d1.dot(&c.d3)) / v - c12 * c12 / (v * v * v);
                let v4 = v * v * v * v;
                let p3 = -v2 / v4 + 3.0 * v1 * v1 / (v4 * v);
                g.d3 = f.d3 * (p1 * p1 * p1) + f.d2 * (3.0 * p1 * p2) + f.d1 * p3;
            }
        }
        Ok(g)
    }

    fn is_exact(&self) -> bool {
        self.inner.is_exact() && self.map.curve.is_exact()
    }
}
