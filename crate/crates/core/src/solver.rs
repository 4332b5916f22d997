// SPDX-License-Identifier: Apache-2.0

//! Synthesis of dual curves with prescribed dual curvature `k₀ = k₁ + εk₂`
//! and, in space, dual torsion `τ₀ = τ₁ + ετ₂`.
//!
//! In the plane the real part is `α' = (cos θ, sin θ)` with `θ' = k₁`, and the
//! dual part is `β' = λN_α` with `λ' = k₂`. In space `α` comes from the
//! Euclidean Frenet system with curvature `k₁` and torsion `τ₁`. The dual
//! part is `β' = xN_α + yB_α` where `(x, y)` solve the linear system
//!
//! ```text
//! x'     = k₂ + τ₁y
//! k₁y''  = k₁²τ₂ − k₁(τ₁x' + τ₁'x) + k₁'(τ₁x + y') − k₁³y
//! ```
//!
//! Everything is integrated as one first-order system so the jets of the
//! result come straight from the state, with no numerical differentiation.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curve::{interior_grid, CurveJet, CurveSource, Dim, DualCurve, RealCurve};
use crate::error::{Error, Result};
use crate::expr::{Bindings, Expr};
use crate::frenet::frenet_auto;
use crate::math;
use crate::numerics::{ode_solve, DenseSolution, IntegratorConfig, OdeSystem};
use crate::vector::{Vec2, Vec3};

/// Grid size for the `k₁ > 0` precondition.
const K1_CHECK_GRID: usize = 1001;

/// Prescribed curvature and torsion as expressions in arc length.
#[derive(Clone, Debug, PartialEq)]
pub struct Prescription {
    dim: Dim,
    domain: (f64, f64),
    // the four prescribed functions in order, then their first derivatives
    funcs: [Expr; 4],
    derivs: [Expr; 4],
}

/// Values of a prescription and its first derivatives at one parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PrescribedValues {
    pub k1: f64,
    pub k2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub dk1: f64,
    pub dk2: f64,
    pub dtau1: f64,
}

impl Prescription {
    pub fn planar(k1: Expr, k2: Expr, domain: (f64, f64)) -> Result<Self> {
        Self::build(Dim::Two, [k1, k2, Expr::num(0.0), Expr::num(0.0)], domain)
    }

    pub fn spatial(k1: Expr, k2: Expr, tau1: Expr, tau2: Expr, domain: (f64, f64)) -> Result<Self> {
        Self::build(Dim::Three, [k1, k2, tau1, tau2], domain)
    }

    /// Parse `k1, k2` (planar) or `k1, k2, tau1, tau2` (spatial).
    pub fn parse(components: &[&str], domain: (f64, f64), bindings: &Bindings) -> Result<Self> {
        let names: Vec<&str> = bindings.keys().map(|k| k.as_str()).collect();
        let mut exprs = components
            .iter()
            .map(|c| Ok(Expr::parse_with_params(c, &names)?.bind(bindings)))
            .collect::<Result<Vec<_>>>()?;
        match exprs.len() {
            2 => {
                let k2 = exprs.pop().unwrap_or_else(|| Expr::num(0.0));
                let k1 = exprs.pop().unwrap_or_else(|| Expr::num(0.0));
                Self::planar(k1, k2, domain)
            }
            4 => {
                let mut it = exprs.into_iter();
                let mut next = || it.next().unwrap_or_else(|| Expr::num(0.0));
                let (k1, k2, t1, t2) = (next(), next(), next(), next());
                Self::spatial(k1, k2, t1, t2, domain)
            }
            n => Err(Error::InvalidParameter(alloc::format!(
                "expected 2 or 4 prescription functions, got {n}"
            ))),
        }
    }

    fn build(dim: Dim, funcs: [Expr; 4], domain: (f64, f64)) -> Result<Self> {
        if !(domain.0 < domain.1) || !domain.0.is_finite() || !domain.1.is_finite() {
            return Err(Error::InvalidParameter(alloc::format!(
                "domain [{}, {}] must be a finite interval with s0 < s1",
                domain.0,
                domain.1
            )));
        }
        let derivs = core::array::from_fn(|i| funcs[i].derivative());
        Ok(Self {
            dim,
            domain,
            funcs,
            derivs,
        })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn k1(&self) -> &Expr {
        &self.funcs[0]
    }

    pub fn k2(&self) -> &Expr {
        &self.funcs[1]
    }

    pub fn tau1(&self) -> &Expr {
        &self.funcs[2]
    }

    pub fn tau2(&self) -> &Expr {
        &self.funcs[3]
    }

    pub fn has_zero_torsion(&self) -> bool {
        self.funcs[2..].iter().all(|e| *e == Expr::num(0.0))
    }

    pub fn values(&self, s: f64) -> Result<PrescribedValues> {
        let f = |e: &Expr| e.eval(s);
        Ok(PrescribedValues {
            k1: f(&self.funcs[0])?,
            k2: f(&self.funcs[1])?,
            tau1: f(&self.funcs[2])?,
            tau2: f(&self.funcs[3])?,
            dk1: f(&self.derivs[0])?,
            dk2: f(&self.derivs[1])?,
            dtau1: f(&self.derivs[2])?,
        })
    }

    /// `k₁ > 0` on a grid covering the closed domain.
    pub fn check_k1(&self) -> Result<()> {
        let (a, b) = self.domain;
        for i in 0..K1_CHECK_GRID {
            let s = a + (b - a) * i as f64 / (K1_CHECK_GRID - 1) as f64;
            let v = self.values(s)?;
            if !(v.k1 > 0.0) {
                return Err(Error::NonPositiveK1 { s, value: v.k1 });
            }
        }
        Ok(())
    }
}

/// Initial data at the base point `s₀` of a planar solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarConstants {
    pub alpha0: Vec2,
    /// Angle of `T_α(s₀)` with the x-axis.
    pub theta0: f64,
    /// `λ(s₀)`, so `λ(s) = λ₀ + ∫k₂`.
    pub lambda0: f64,
    pub beta0: Vec2,
}

impl Default for PlanarConstants {
    fn default() -> Self {
        Self {
            alpha0: Vec2::zero(),
            theta0: 0.0,
            lambda0: 0.0,
            beta0: Vec2::zero(),
        }
    }
}

/// Initial data at the base point `s₀` of a spatial solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpatialConstants {
    pub alpha0: Vec3,
    /// Initial Frenet frame `(T, N, B)` of `α`; must be orthonormal and positively oriented.
    pub frame: [Vec3; 3],
    pub x0: f64,
    pub y0: f64,
    pub dy0: f64,
    pub beta0: Vec3,
}

impl Default for SpatialConstants {
    fn default() -> Self {
        Self {
            alpha0: Vec3::zero(),
            frame: [
                Vec3::xyz(1.0, 0.0, 0.0),
                Vec3::xyz(0.0, 1.0, 0.0),
                Vec3::xyz(0.0, 0.0, 1.0),
            ],
            x0: 0.0,
            y0: 0.0,
            dy0: 0.0,
            beta0: Vec3::zero(),
        }
    }
}

impl SpatialConstants {
    fn check_frame(&self) -> Result<()> {
        let [t, n, b] = self.frame;
        let err = [
            (t.dot(&t) - 1.0).abs(),
            (n.dot(&n) - 1.0).abs(),
            t.dot(&n).abs(),
            (t.cross(&n) - b).max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if !(err < 1e-9) {
            return Err(Error::InvalidParameter(
                "initial frame must be orthonormal and right-handed".into(),
            ));
        }
        Ok(())
    }
}

// Planar state: [θ, αx, αy, λ, βx, βy]
struct PlanarSystem<'a>(&'a Prescription);

impl OdeSystem for PlanarSystem<'_> {
    fn dim(&self) -> usize {
        6
    }

    fn rhs(&self, s: f64, y: &[f64], dy: &mut [f64]) {
        let (k1, k2) = match self.0.values(s) {
            Ok(v) => (v.k1, v.k2),
            Err(_) => (f64::NAN, f64::NAN),
        };
        let (c, sn) = (math::cos(y[0]), math::sin(y[0]));
        dy[0] = k1;
        dy[1] = c;
        dy[2] = sn;
        dy[3] = k2;
        dy[4] = -y[3] * sn;
        dy[5] = y[3] * c;
    }
}

// Spatial state: [α(3), T(3), N(3), B(3), x, y, y', β(3)]
struct SpatialSystem<'a>(&'a Prescription);

const A: usize = 0;
const T: usize = 3;
const N: usize = 6;
const B: usize = 9;
const X: usize = 12;
const BETA: usize = 15;
const SPATIAL_DIM: usize = 18;

fn v3(y: &[f64], at: usize) -> Vec3 {
    Vec3::xyz(y[at], y[at + 1], y[at + 2])
}

fn put(y: &mut [f64], at: usize, v: Vec3) {
    y[at..at + 3].copy_from_slice(v.as_array());
}

/// Unit `T`, `N` made orthogonal to it, `B = T × N`.
fn gram_schmidt(t: Vec3, n: Vec3) -> [Vec3; 3] {
    let t = t * (1.0 / t.norm());
    let n = n - t * t.dot(&n);
    let n = n * (1.0 / n.norm());
    [t, n, t.cross(&n)]
}

/// `x'` and `y''` of the linear system for `(x, y)`.
fn xy_rates(v: &PrescribedValues, x: f64, y: f64, dy: f64) -> (f64, f64) {
    let dx = v.k2 + v.tau1 * y;
    let k1 = v.k1;
    let ddy =
        k1 * v.tau2 - (v.tau1 * dx + v.dtau1 * x) + v.dk1 / k1 * (v.tau1 * x + dy) - k1 * k1 * y;
    (dx, ddy)
}

impl OdeSystem for SpatialSystem<'_> {
    fn dim(&self) -> usize {
        SPATIAL_DIM
    }

    fn rhs(&self, s: f64, y: &[f64], d: &mut [f64]) {
        let v = self.0.values(s).unwrap_or(PrescribedValues {
            k1: f64::NAN,
            ..Default::default()
        });
        let (t, n, b) = (v3(y, T), v3(y, N), v3(y, B));
        let (x, yy, dy) = (y[X], y[X + 1], y[X + 2]);
        put(d, A, t);
        put(d, T, n * v.k1);
        put(d, N, t * -v.k1 + b * v.tau1);
        put(d, B, n * -v.tau1);
        let (dx, ddy) = xy_rates(&v, x, yy, dy);
        d[X] = dx;
        d[X + 1] = dy;
        d[X + 2] = ddy;
        put(d, BETA, n * x + b * yy);
    }

    fn project(&self, y: &mut [f64]) {
        let [t, n, b] = gram_schmidt(v3(y, T), v3(y, N));
        put(y, T, t);
        put(y, N, n);
        put(y, B, b);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Alpha,
    Beta,
}

struct PlanarSource {
    sol: Arc<DenseSolution>,
    p: Arc<Prescription>,
    part: Part,
}

impl CurveSource for PlanarSource {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let y = self.sol.eval(s);
        let v = self.p.values(s)?;
        let t = Vec2::xy(math::cos(y[0]), math::sin(y[0])).extend();
        let n = Vec2::xy(-math::sin(y[0]), math::cos(y[0])).extend();
        let lambda = y[3];
        let jet = match self.part {
            Part::Alpha => CurveJet {
                position: Vec2::xy(y[1], y[2]).extend(),
                d1: t,
                d2: n * v.k1,
                d3: n * v.dk1 - t * (v.k1 * v.k1),
            },
            Part::Beta => CurveJet {
                position: Vec2::xy(y[4], y[5]).extend(),
                d1: n * lambda,
                d2: n * v.k2 - t * (lambda * v.k1),
                d3: n * (v.dk2 - lambda * v.k1 * v.k1) - t * (2.0 * v.k1 * v.k2 + lambda * v.dk1),
            },
        };
        Ok(jet.truncated(order))
    }
}

struct SpatialSource {
    sol: Arc<DenseSolution>,
    p: Arc<Prescription>,
    part: Part,
}

impl CurveSource for SpatialSource {
    fn jet(&self, s: f64, order: usize) -> Result<CurveJet> {
        let y = self.sol.eval(s);
        let v = self.p.values(s)?;
        let [t, n, b] = gram_schmidt(v3(&y, T), v3(&y, N));
        let (k1, tau1) = (v.k1, v.tau1);
        let jet = match self.part {
            Part::Alpha => CurveJet {
                position: v3(&y, A),
                d1: t,
                d2: n * k1,
                d3: n * v.dk1 + (t * -k1 + b * tau1) * k1,
            },
            Part::Beta => {
                let (x, yy, dy) = (y[X], y[X + 1], y[X + 2]);
                let (dx, ddy) = xy_rates(&v, x, yy, dy);
                // β'' = aT + bN + cB
                let (ca, cb, cc) = (-k1 * x, dx - tau1 * yy, x * tau1 + dy);
                let dca = -v.dk1 * x - k1 * dx;
                let dcb = v.dk2;
                let dcc = dx * tau1 + x * v.dtau1 + ddy;
                CurveJet {
                    position: v3(&y, BETA),
                    d1: n * x + b * yy,
                    d2: t * ca + n * cb + b * cc,
                    d3: t * (dca - cb * k1)
                        + n * (ca * k1 + dcb - cc * tau1)
                        + b * (cb * tau1 + dcc),
                }
            }
        };
        Ok(jet.truncated(order))
    }
}

/// Result of a planar solve.
#[derive(Clone, Debug)]
pub struct PlanarSolution {
    curve: DualCurve,
    sol: Arc<DenseSolution>,
}

impl PlanarSolution {
    pub fn curve(&self) -> &DualCurve {
        &self.curve
    }

    pub fn into_curve(self) -> DualCurve {
        self.curve
    }

    /// Tangent angle of `α`.
    pub fn theta(&self, s: f64) -> f64 {
        self.sol.eval(s)[0]
    }

    /// `λ` with `β' = λN_α`.
    pub fn lambda(&self, s: f64) -> f64 {
        self.sol.eval(s)[3]
    }
}

/// Result of a spatial solve.
#[derive(Clone, Debug)]
pub struct SpatialSolution {
    curve: DualCurve,
    sol: Arc<DenseSolution>,
}

impl SpatialSolution {
    pub fn curve(&self) -> &DualCurve {
        &self.curve
    }

    pub fn into_curve(self) -> DualCurve {
        self.curve
    }

    /// `(x, y, y')` with `β' = xN_α + yB_α`.
    pub fn xy(&self, s: f64) -> (f64, f64, f64) {
        let y = self.sol.eval(s);
        (y[X], y[X + 1], y[X + 2])
    }

    /// Frenet frame `(T, N, B)` of `α`.
    pub fn frame(&self, s: f64) -> [Vec3; 3] {
        let y = self.sol.eval(s);
        gram_schmidt(v3(&y, T), v3(&y, N))
    }
}

pub fn solve_planar(
    p: &Prescription,
    c: &PlanarConstants,
    cfg: &IntegratorConfig,
) -> Result<PlanarSolution> {
    if p.dim() != Dim::Two {
        return Err(Error::InvalidParameter(
            "planar solve needs a planar prescription (k1, k2)".into(),
        ));
    }
    p.check_k1()?;
    let y0 = [
        c.theta0,
        c.alpha0[0],
        c.alpha0[1],
        c.lambda0,
        c.beta0[0],
        c.beta0[1],
    ];
    let sol = Arc::new(ode_solve(&PlanarSystem(p), &y0, p.domain(), cfg)?);
    let pa = Arc::new(p.clone());
    let part = |part| {
        RealCurve::from_source(
            Dim::Two,
            PlanarSource {
                sol: sol.clone(),
                p: pa.clone(),
                part,
            },
        )
    };
    let curve = DualCurve::new(part(Part::Alpha), part(Part::Beta), p.domain())?;
    Ok(PlanarSolution { curve, sol })
}

pub fn solve_spatial(
    p: &Prescription,
    c: &SpatialConstants,
    cfg: &IntegratorConfig,
) -> Result<SpatialSolution> {
    if p.dim() != Dim::Three {
        return Err(Error::InvalidParameter(
            "spatial solve needs k1, k2, tau1, tau2".into(),
        ));
    }
    p.check_k1()?;
    c.check_frame()?;
    let mut y0 = [0.0; SPATIAL_DIM];
    put(&mut y0, A, c.alpha0);
    put(&mut y0, T, c.frame[0]);
    put(&mut y0, N, c.frame[1]);
    put(&mut y0, B, c.frame[2]);
    y0[X] = c.x0;
    y0[X + 1] = c.y0;
    y0[X + 2] = c.dy0;
    put(&mut y0, BETA, c.beta0);
    let sol = Arc::new(ode_solve(&SpatialSystem(p), &y0, p.domain(), cfg)?);
    let pa = Arc::new(p.clone());
    let part = |part| {
        RealCurve::from_source(
            Dim::Three,
            SpatialSource {
                sol: sol.clone(),
                p: pa.clone(),
                part,
            },
        )
    };
    let curve = DualCurve::new(part(Part::Alpha), part(Part::Beta), p.domain())?;
    Ok(SpatialSolution { curve, sol })
}

/// Spatial solve for `τ₀ = 0`. The real part is then planar and `y` solves
/// `k₁y'' − k₁'y' + k₁³y = 0`.
pub fn solve_zero_torsion(
    p: &Prescription,
    c: &SpatialConstants,
    cfg: &IntegratorConfig,
) -> Result<SpatialSolution> {
    if !p.has_zero_torsion() {
        return Err(Error::InvalidParameter(
            "zero-torsion solve needs tau1 = tau2 = 0".into(),
        ));
    }
    let p = match p.dim() {
        Dim::Three => p.clone(),
        Dim::Two => Prescription::spatial(
            p.k1().clone(),
            p.k2().clone(),
            Expr::num(0.0),
            Expr::num(0.0),
            p.domain(),
        )?,
    };
    solve_spatial(&p, c, cfg)
}

/// Largest deviations of the recomputed curvature and torsion from a prescription.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrescriptionReport {
    pub k1: f64,
    pub k2: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub tol: f64,
    /// Parameter value where the largest deviation occurred.
    pub worst_s: f64,
    /// A Frenet evaluation failed somewhere on the grid.
    pub failed: bool,
}

impl PrescriptionReport {
    pub fn max(&self) -> f64 {
        self.k1.max(self.k2).max(self.tau1).max(self.tau2)
    }

    pub fn pass(&self) -> bool {
        !self.failed && self.max() < self.tol
    }
}

/// Compare the Frenet data of `curve` with `p` on an interior grid.
pub fn verify_prescription(
    curve: &DualCurve,
    p: &Prescription,
    grid_size: usize,
    tol: f64,
) -> PrescriptionReport {
    let mut r = PrescriptionReport {
        k1: 0.0,
        k2: 0.0,
        tau1: 0.0,
        tau2: 0.0,
        tol,
        worst_s: f64::NAN,
        failed: false,
    };
    let (a, b) = curve.domain();
    let mut worst = -1.0;
    for s in interior_grid(a, b, grid_size.max(2)) {
        let (f, v) = match (frenet_auto(curve, s), p.values(s)) {
            (Ok(f), Ok(v)) => (f, v),
            _ => {
                r.failed = true;
                r.worst_s = s;
                continue;
            }
        };
        let tau = f.tau.unwrap_or_default();
        let d = [
            (f.kappa.re - v.k1).abs(),
            (f.kappa.du - v.k2).abs(),
            (tau.re - v.tau1).abs(),
            (tau.du - v.tau2).abs(),
        ];
        r.k1 = r.k1.max(d[0]);
        r.k2 = r.k2.max(d[1]);
        if p.dim() == Dim::Three {
            r.tau1 = r.tau1.max(d[2]);
            r.tau2 = r.tau2.max(d[3]);
        }
        let m = if p.dim() == Dim::Three {
            d.into_iter().fold(0.0, f64::max)
        } else {
            d[0].max(d[1])
        };
        if m > worst {
            worst = m;
            if !r.failed {
                r.worst_s = s;
            }
        }
    }
    r
}

/// Largest mismatch between each jet entry of both parts and the Simpson
/// integral of the next one, over consecutive panels of a closed grid.
///
/// Solver output builds its derivatives from the prescription, so
/// [`verify_prescription`] alone cannot see integration error; the
/// integrated positions and frames can.
pub fn jet_consistency(curve: &DualCurve, grid_size: usize) -> Result<f64> {
    let (a, b) = curve.domain();
    let n = grid_size.max(2);
    let h = (b - a) / (n - 1) as f64;
    let mut worst: f64 = 0.0;
    for i in 0..n - 1 {
        let s0 = a + h * i as f64;
        let s1 = if i == n - 2 { b } else { s0 + h };
        let m = 0.5 * (s0 + s1);
        let (a0, b0) = curve.jets(s0, 3)?;
        let (am, bm) = curve.jets(m, 3)?;
        let (a1, b1) = curve.jets(s1, 3)?;
        for (j0, jm, j1) in [(a0, am, a1), (b0, bm, b1)] {
            for k in 0..3 {
                let integral =
                    (j0.derivative(k + 1) + jm.derivative(k + 1) * 4.0 + j1.derivative(k + 1))
                        * ((s1 - s0) / 6.0);
                worst = worst.max((j1.derivative(k) - j0.derivative(k) - integral).max_abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{DEFAULT_GRID, SYMBOLIC_TOL};

    fn rk4() -> IntegratorConfig {
        IntegratorConfig::default()
    }

    #[test]
    fn planar_constant_prescription() {
        let p = Prescription::parse(&["1", "1"], (0.0, 3.0), &Bindings::new()).unwrap();
        let sol = solve_planar(&p, &PlanarConstants::default(), &rk4()).unwrap();
        let c = sol.curve();
        assert!(c.is_unit_speed(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
        let r = verify_prescription(c, &p, 101, 1e-9);
        assert!(r.pass(), "{r:?}");
        assert!((sol.lambda(2.0) - 2.0).abs() < 1e-12);
        assert!((sol.theta(2.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_positive_k1() {
        let p = Prescription::parse(&["1 - s", "0"], (0.0, 2.0), &Bindings::new()).unwrap();
        assert!(matches!(
            solve_planar(&p, &PlanarConstants::default(), &rk4()),
            Err(Error::NonPositiveK1 { .. })
        ));
    }

    #[test]
    fn spatial_trivial() {
        let p = Prescription::parse(&["1", "0", "0", "0"], (0.0, 6.0), &Bindings::new()).unwrap();
        let sol = solve_spatial(&p, &SpatialConstants::default(), &rk4()).unwrap();
        for s in [0.5, 3.0, 6.0] {
            let (a, b) = sol.curve().jets(s, 1).unwrap();
            assert!(b.d1.max_abs() == 0.0 && b.position.max_abs() == 0.0);
            // identity frame at 0: α = (sin s, 1 − cos s, 0)
            let exact = Vec3::xyz(math::sin(s), 1.0 - math::cos(s), 0.0);
            assert!((a.position - exact).max_abs() < 1e-10);
        }
    }

    #[test]
    fn bad_frame_rejected() {
        let p = Prescription::parse(&["1", "0", "0", "0"], (0.0, 1.0), &Bindings::new()).unwrap();
        let c = SpatialConstants {
            frame: [Vec3::xyz(1.0, 0.0, 0.0); 3],
            ..Default::default()
        };
        assert!(matches!(
            solve_spatial(&p, &c, &rk4()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn jet_consistency_sees_step_size() {
        let p = Prescription::parse(
            &["1", "sin(3*s)", "cos(s)", "s"],
            (0.0, 6.0),
            &Bindings::new(),
        )
        .unwrap();
        let fine = solve_spatial(&p, &SpatialConstants::default(), &rk4()).unwrap();
        let coarse = solve_spatial(
            &p,
            &SpatialConstants::default(),
            &IntegratorConfig::rk4(0.5),
        )
        .unwrap();
        let (f, c) = (
            jet_consistency(fine.curve(), 201).unwrap(),
            jet_consistency(coarse.curve(), 201).unwrap(),
        );
        assert!(f < 1e-8, "{f:e}");
        assert!(c > 1e-5, "{c:e}");
        // the prescription check is blind to the step
        assert!(verify_prescription(coarse.curve(), &p, 201, 1e-9).pass());
    }
}
