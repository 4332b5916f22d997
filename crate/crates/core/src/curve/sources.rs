// SPDX-License-Identifier: Apache-2.0

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{CurveJet, CurveSource, Dim, RealCurve};
use crate::error::Result;
use crate::expr::Expr;
use crate::vector::Vec3;

/// Curve with symbolic components; derivatives up to order 3 are computed
/// once at construction.
#[derive(Clone, Debug)]
pub struct ExprCurve {
    dim: usize,
    // [f, f', f'', f'''] per component, padded with zeros to three components
    table: [[Expr; 4]; 3],
}

impl ExprCurve {
    pub fn new(components: &[Expr]) -> Self {
        let zero = || core::array::from_fn(|_| Expr::num(0.0));
        let mut table: [[Expr; 4]; 3] = [zero(), zero(), zero()];
        for (row, e) in table.iter_mut().zip(components) {
            row[0] = e.clone();
            for k in 1..4 {
                row[k] = row[k - 1].derivative();
            }
        }
        Self {
            dim: components.len().min(3),
            table,
        }
    }

    pub fn component(&self, i: usize, order: usize) -> &Expr {
        &self.table[i][order]
    }
}

impl CurveSource for ExprCurve {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let mut d = [Vec3::zero(); 4];
        for (k, v) in d.iter_mut().enumerate().take(order.min(3) + 1) {
            for i in 0..self.dim {
                v[i] = self.table[i][k].eval(s)?;
            }
        }
        Ok(CurveJet {
            position: d[0],
            d1: d[1],
            d2: d[2],
            d3: d[3],
        })
    }

    fn derivative(&self) -> Option<RealCurve> {
        let dim = Dim::from_usize(self.dim)?;
        let d1: Vec<Expr> = (0..self.dim).map(|i| self.table[i][1].clone()).collect();
        Some(RealCurve::from_source(dim, ExprCurve::new(&d1)))
    }

    fn expressions(&self) -> Option<Vec<Expr>> {
        Some((0..self.dim).map(|i| self.table[i][0].clone()).collect())
    }
}

/// Curve given by a position function; derivatives by central differences.
///
/// Orders 1 and 2 use `h = step·max(1, |s|)` (default step `1e-5`). The third
/// derivative is far more sensitive to rounding, so it uses a step at least
/// `1e-3·max(1, |s|)`.
pub struct NumericCurve {
    f: Box<dyn Fn(f64) -> Vec3 + Send + Sync>,
    step: f64,
}

impl NumericCurve {
    pub const DEFAULT_STEP: f64 = 1e-5;
    const THIRD_ORDER_STEP: f64 = 1e-3;

    pub fn new(f: impl Fn(f64) -> Vec3 + Send + Sync + 'static, step: Option<f64>) -> Self {
        Self {
            f: Box::new(f),
            step: step.unwrap_or(Self::DEFAULT_STEP),
        }
    }
}

impl CurveSource for NumericCurve {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let f = &self.f;
        let scale = s.abs().max(1.0);
        let h = self.step * scale;
        let p = f(s);
        let mut jet = CurveJet {
            position: p,
            ..CurveJet::default()
        };
        if order >= 1 {
            let (fp, fm) = (f(s + h), f(s - h));
            jet.d1 = (fp - fm) * (0.5 / h);
            jet.d2 = (fp - p * 2.0 + fm) * (1.0 / (h * h));
        }
        if order >= 3 {
            let h = h.max(Self::THIRD_ORDER_STEP * scale);
            let (p1, m1, p2, m2) = (f(s + h), f(s - h), f(s + 2.0 * h), f(s - 2.0 * h));
            jet.d3 = (p2 - p1 * 2.0 + m1 * 2.0 - m2) * (0.5 / (h * h * h));
        }
        Ok(jet.truncated(order))
    }

    fn is_exact(&self) -> bool {
        false
    }
}

pub(super) struct Constant(pub Vec3);

impl CurveSource for Constant {
    fn jet(&self, _s: f64, _order: usize) -> Result<CurveJet> {
        Ok(CurveJet {
            position: self.0,
            ..CurveJet::default()
        })
    }
}

pub(super) struct Sum(pub RealCurve, pub RealCurve);

impl CurveSource for Sum {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let (a, b) = (self.0.jet(s, order)?, self.1.jet(s, order)?);
        Ok(CurveJet {
            position: a.position + b.position,
            d1: a.d1 + b.d1,
            d2: a.d2 + b.d2,
            d3: a.d3 + b.d3,
        })
    }

    fn is_exact(&self) -> bool {
        self.0.is_exact() && self.1.is_exact()
    }
}

pub(super) struct Dilated {
    pub inner: RealCurve,
    pub lambda: f64,
}

impl CurveSource for Dilated {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let l = self.lambda;
        let j = self.inner.jet(s / l, order)?;
        Ok(CurveJet {
            position: j.position * l,
            d1: j.d1,
            d2: j.d2 * (1.0 / l),
            d3: j.d3 * (1.0 / (l * l)),
        })
    }

    fn is_exact(&self) -> bool {
        self.inner.is_exact()
    }
}
