// SPDX-License-Identifier: Apache-2.0

//! Dual curves `γ = α + εβ` of a real parameter, stored as two real-curve
//! evaluators that produce derivative jets.
//!
//! A dual curve can be reparametrized by arc length only when `α` is regular
//! and `<α', β'> = 0`. Reparametrizing cannot repair the second condition,
//! since `<α'(φ), β'(φ)>` just picks up a factor `φ'²`.

mod reparam;
mod sources;

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{AdmissibilityFailure, Error, Result};
use crate::expr::{Bindings, Expr};
use crate::vector::Vec3;

pub use reparam::{ArcLengthMap, ReparamOptions};
pub use sources::{ExprCurve, NumericCurve};

/// Default number of grid points for admissibility and speed checks.
pub const DEFAULT_GRID: usize = 257;
/// Default check tolerance for curves with exact (symbolic) jets.
pub const SYMBOLIC_TOL: f64 = 1e-8;
/// Default check tolerance for curves with finite-difference jets.
pub const NUMERIC_TOL: f64 = 1e-4;

/// Position and first three derivatives at a parameter value. Orders that
/// were not requested are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CurveJet {
    pub position: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

impl CurveJet {
    /// Keep derivatives up to `order`, zeroing the rest.
    pub fn truncated(mut self, order: usize) -> Self {
        if order < 3 {
            self.d3 = Vec3::zero();
        }
        if order < 2 {
            self.d2 = Vec3::zero();
        }
        if order < 1 {
            self.d1 = Vec3::zero();
        }
        self
    }

    pub fn derivative(&self, k: usize) -> Vec3 {
        match k {
            0 => self.position,
            1 => self.d1,
            2 => self.d2,
            _ => self.d3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_usize(n: usize) -> Option<Self> {
        match n {
            2 => Some(Self::Two),
            3 => Some(Self::Three),
            _ => None,
        }
    }

    pub fn get(self) -> usize {
        match self {
            Self::Two => 2,
            Self::Three => 3,
        }
    }
}

/// Something that can produce jets of a real curve. Planar curves report
/// zero third components.
pub trait CurveSource: Send + Sync {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet>;

    /// True when jets are exact rather than finite differences.
    fn is_exact(&self) -> bool {
        true
    }

    /// The curve `s ↦ f'(s)`, when the source can differentiate itself.
    fn derivative(&self) -> Option<RealCurve> {
        None
    }

    /// Component expressions, when the curve is symbolic.
    fn expressions(&self) -> Option<Vec<Expr>> {
        None
    }
}

/// A real curve in the plane or in space with shareable, immutable state.
#[derive(Clone)]
pub struct RealCurve {
    dim: Dim,
    source: Arc<dyn CurveSource>,
}

impl fmt::Debug for RealCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealCurve")
            .field("dim", &self.dim)
            .field("exact", &self.source.is_exact())
            .finish()
    }
}

impl RealCurve {
    pub fn from_source(dim: Dim, source: impl CurveSource + 'static) -> Self {
        Self {
            dim,
            source: Arc::new(source),
        }
    }

    /// Curve from 2 or 3 component expressions in `s`.
    pub fn from_exprs(components: &[Expr]) -> Result<Self> {
        let dim = Dim::from_usize(components.len()).ok_or_else(|| {
            Error::InvalidParameter(alloc::format!("{} components", components.len()))
        })?;
        Ok(Self::from_source(dim, ExprCurve::new(components)))
    }

    /// Parse component expressions with named parameter values.
    pub fn parse(components: &[&str], bindings: &Bindings) -> Result<Self> {
        let names: Vec<&str> = bindings.keys().map(|k| k.as_str()).collect();
        let exprs = components
            .iter()
            .map(|c| Ok(Expr::parse_with_params(c, &names)?.bind(bindings)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_exprs(&exprs)
    }

    /// Curve from a position function with central-difference jets.
    pub fn numeric(
        dim: Dim,
        f: impl Fn(f64) -> Vec3 + Send + Sync + 'static,
        step: Option<f64>,
    ) -> Self {
        Self::from_source(dim, NumericCurve::new(f, step))
    }

    pub fn constant(dim: Dim, p: Vec3) -> Self {
        Self::from_source(dim, sources::Constant(p))
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn is_exact(&self) -> bool {
        self.source.is_exact()
    }

    pub fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        if order > 3 {
            return Err(Error::InvalidParameter(alloc::format!(
                "jet order {order} > 3"
            )));
        }
        self.source.jet(s, order)
    }

    pub fn position(&self, s: f64) -> Result<Vec3> {
        Ok(self.jet(s, 0)?.position)
    }

    pub fn derivative(&self) -> Option<RealCurve> {
        self.source.derivative()
    }

    pub fn expressions(&self) -> Option<Vec<Expr>> {
        self.source.expressions()
    }

    /// Pointwise sum of two curves.
    pub fn plus(&self, other: &RealCurve) -> RealCurve {
        let dim = if self.dim == Dim::Three || other.dim == Dim::Three {
            Dim::Three
        } else {
            Dim::Two
        };
        Self::from_source(dim, sources::Sum(self.clone(), other.clone()))
    }

    /// `s ↦ λ f(s/λ)`.
    pub fn dilate(&self, lambda: f64) -> RealCurve {
        Self::from_source(
            self.dim,
            sources::Dilated {
                inner: self.clone(),
                lambda,
            },
        )
    }

    /// Reparametrize this curve by its own arc length over `domain`. Returns
    /// the new curve and its parameter interval.
    pub fn arclength_reparametrize(
        &self,
        domain: (f64, f64),
        opts: &ReparamOptions,
    ) -> Result<(RealCurve, (f64, f64))> {
        let map = Arc::new(ArcLengthMap::new(self.clone(), domain, opts)?);
        let range = map.arclength_range();
        let curve = Self::from_source(
            self.dim,
            reparam::Reparametrized {
                inner: self.clone(),
                map,
            },
        );
        Ok((curve, range))
    }
}

/// Points strictly inside `(a, b)`: `a + (b − a)(i + 1)/(n + 1)`.
pub fn interior_grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| a + (b - a) * (i + 1) as f64 / (n + 1) as f64)
}

/// A dual curve of real parameter over a closed interval.
#[derive(Clone, Debug)]
pub struct DualCurve {
    pub alpha: RealCurve,
    pub beta: RealCurve,
    domain: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissibilityReport {
    /// Minimum of `|α'|` over the grid.
    pub min_speed: f64,
    /// Maximum of `|<α', β'>|` over the grid.
    pub max_inner: f64,
    pub tol: f64,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.failure().is_none()
    }

    /// The first failed condition; regularity is checked before orthogonality.
    pub fn failure(&self) -> Option<AdmissibilityFailure> {
        if !(self.min_speed > self.tol) {
            Some(AdmissibilityFailure::NonRegularRealPart)
        } else if !(self.max_inner < self.tol) {
            Some(AdmissibilityFailure::NotOrthogonal)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeedReport {
    /// Max of `| |f'| − 1 |` over the grid.
    pub max_speed_error: f64,
    /// Max of `|<α', β'>|` (zero when not applicable).
    pub max_inner: f64,
    pub ok: bool,
}

impl DualCurve {
    pub fn new(alpha: RealCurve, beta: RealCurve, domain: (f64, f64)) -> Result<Self> {
        if alpha.dim() != beta.dim() {
            return Err(Error::InvalidParameter(
                "real and dual parts differ in dimension".into(),
            ));
        }
        if !(domain.0 < domain.1) || !domain.0.is_finite() || !domain.1.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!(
                "domain [{}, {}] must be a finite interval with s0 < s1",
                domain.0,
                domain.1
            )));
        }
        Ok(Self {
            alpha,
            beta,
            domain,
        })
    }

    /// Parse a curve from component expressions.
    pub fn parse(
        alpha: &[&str],
        beta: &[&str],
        domain: (f64, f64),
        bindings: &Bindings,
    ) -> Result<Self> {
        Self::new(
            RealCurve::parse(alpha, bindings)?,
            RealCurve::parse(beta, bindings)?,
            domain,
        )
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn dim(&self) -> Dim {
        self.alpha.dim()
    }

    pub fn is_exact(&self) -> bool {
        self.alpha.is_exact() && self.beta.is_exact()
    }

    /// Check tolerance matching the jet source.
    pub fn default_tol(&self) -> f64 {
        if self.is_exact() {
            SYMBOLIC_TOL
        } else {
            NUMERIC_TOL
        }
    }

    pub fn contains(&self, s: f64) -> bool {
        let slack = 1e-12 * (self.domain.1 - self.domain.0).abs().max(1.0);
        s >= self.domain.0 - slack && s <= self.domain.1 + slack
    }

    /// Jets of `α` and `β` at `s`.
    pub fn jets(&self, s: f64, order: usize) -> Result<(CurveJet, CurveJet)> {
        if !self.contains(s) {
            return Err(Error::OutOfDomain {
                s,
                min: self.domain.0,
                max: self.domain.1,
            });
        }
        Ok((self.alpha.jet(s, order)?, self.beta.jet(s, order)?))
    }

    pub fn position(&self, s: f64) -> Result<(Vec3, Vec3)> {
        let (a, b) = self.jets(s, 0)?;
        Ok((a.position, b.position))
    }

    pub fn grid(&self, n: usize) -> impl Iterator<Item = f64> + Clone {
        interior_grid(self.domain.0, self.domain.1, n)
    }

    pub fn check_admissible(&self, grid_size: usize, tol: f64) -> Result<AdmissibilityReport> {
        let grid_size = grid_size.max(2);
        let mut min_speed = f64::INFINITY;
        let mut max_inner: f64 = 0.0;
        for s in self.grid(grid_size) {
            let (a, b) = self.jets(s, 1)?;
            min_speed = min_speed.min(a.d1.norm());
            max_inner = max_inner.max(a.d1.dot(&b.d1).abs());
        }
        Ok(AdmissibilityReport {
            min_speed,
            max_inner,
            tol,
        })
    }

    /// `<γ', γ'> = 1 + 0ε` on the grid.
    pub fn is_unit_speed(&self, grid_size: usize, tol: f64) -> Result<SpeedReport> {
        let mut max_speed_error: f64 = 0.0;
        let mut max_inner: f64 = 0.0;
        for s in self.grid(grid_size.max(2)) {
            let (a, b) = self.jets(s, 1)?;
            max_speed_error = max_speed_error.max((a.d1.norm_squared() - 1.0).abs());
            max_inner = max_inner.max(a.d1.dot(&b.d1).abs());
        }
        Ok(SpeedReport {
            max_speed_error,
            max_inner,
            ok: max_speed_error < tol && max_inner < tol,
        })
    }

    /// A unit-speed curve is normalized when `β` is unit speed as well.
    pub fn is_normalized(&self, grid_size: usize, tol: f64) -> Result<SpeedReport> {
        let mut max_speed_error: f64 = 0.0;
        for s in self.grid(grid_size.max(2)) {
            let (_, b) = self.jets(s, 1)?;
            max_speed_error = max_speed_error.max((b.d1.norm() - 1.0).abs());
        }
        Ok(SpeedReport {
            max_speed_error,
            max_inner: 0.0,
            ok: max_speed_error < tol,
        })
    }

    /// Reparametrize by arc length of the real part, starting at parameter 0.
    pub fn arclength_reparametrize(&self) -> Result<DualCurve> {
        self.arclength_reparametrize_with(&ReparamOptions::default())
    }

    /// Reparametrize by arc length of `α`. The same change of parameter is
    /// applied to `β`; `β` is not normalized independently.
    pub fn arclength_reparametrize_with(&self, opts: &ReparamOptions) -> Result<DualCurve> {
        let tol = opts.tol.unwrap_or_else(|| self.default_tol());
        let report = self.check_admissible(opts.grid, tol)?;
        if let Some(why) = report.failure() {
            return Err(Error::NotAdmissible(why));
        }
        let map = Arc::new(ArcLengthMap::new(self.alpha.clone(), self.domain, opts)?);
        let range = map.arclength_range();
        let wrap = |inner: &RealCurve| {
            RealCurve::from_source(
                inner.dim(),
                reparam::Reparametrized {
                    inner: inner.clone(),
                    map: map.clone(),
                },
            )
        };
        DualCurve::new(wrap(&self.alpha), wrap(&self.beta), range)
    }

    /// `s ↦ λγ(s/λ)` for `λ > 0`.
    pub fn dilate(&self, lambda: f64) -> Result<DualCurve> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!(
                "dilation factor must be positive, got {lambda}"
            )));
        }
        DualCurve::new(
            self.alpha.dilate(lambda),
            self.beta.dilate(lambda),
            (lambda * self.domain.0, lambda * self.domain.1),
        )
    }

    /// The same curve on a sub-interval (or any interval the evaluators accept).
    pub fn with_domain(&self, domain: (f64, f64)) -> Result<DualCurve> {
        DualCurve::new(self.alpha.clone(), self.beta.clone(), domain)
    }
}
