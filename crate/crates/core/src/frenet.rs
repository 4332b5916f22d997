// SPDX-License-Identifier: Apache-2.0

//! Dual Frenet data of unit-speed dual curves.
//!
//! Three routes compute the same data. The direct route does everything in
//! dual arithmetic. The α route applies the decomposition formulas built on
//! the Euclidean frame of the real part. The normalized route rewrites those
//! formulas with the Frenet frame of `β`. Planar curves use a signed normal
//! `N = J·T`, with `J` the counterclockwise quarter turn.

use crate::curve::{CurveJet, DualCurve};
use crate::dual::{DualScalar, DualVec3};
use crate::error::{Error, Result};
use crate::vector::Vec3;

/// Below this, `κ_α` counts as zero and the normal is undefined.
pub const CURVATURE_EPS: f64 = 1e-10;
/// Below this, `κ_β` counts as zero (`β` is locally a line).
const BETA_CURVATURE_EPS: f64 = 1e-12;

/// Euclidean Frenet data of the real part `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaFrame {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    pub tau: f64,
    /// `dκ_α/ds`.
    pub kappa_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetData {
    pub s: f64,
    pub t: DualVec3,
    pub n: DualVec3,
    /// Absent for planar curves.
    pub b: Option<DualVec3>,
    pub kappa: DualScalar,
    /// Absent for planar curves.
    pub tau: Option<DualScalar>,
    pub alpha: AlphaFrame,
}

impl FrenetData {
    /// Largest componentwise difference between two sets of Frenet data.
    pub fn max_difference(&self, other: &FrenetData) -> f64 {
        let mut d = self
            .t
            .distance(&other.t)
            .max(self.n.distance(&other.n))
            .max(self.kappa.distance(other.kappa));
        if let (Some(a), Some(b)) = (self.b, other.b) {
            d = d.max(a.distance(&b));
        }
        if let (Some(a), Some(b)) = (self.tau, other.tau) {
            d = d.max(a.distance(b));
        }
        d
    }

    /// Largest deviation of the pairwise dual inner products from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let frame: [Option<DualVec3>; 3] = [Some(self.t), Some(self.n), self.b];
        let mut err: f64 = 0.0;
        for i in 0..3 {
            for j in i..3 {
                if let (Some(u), Some(v)) = (frame[i], frame[j]) {
                    let target = if i == j {
                        DualScalar::ONE
                    } else {
                        DualScalar::ZERO
                    };
                    err = err.max(u.dot(&v).distance(target));
                }
            }
        }
        err
    }
}

fn dual(a: Vec3, b: Vec3) -> DualVec3 {
    DualVec3::new(a, b)
}

fn unit_speed_tol(curve: &DualCurve) -> f64 {
    if curve.is_exact() {
        1e-6
    } else {
        1e-4
    }
}

fn unit_speed_jets(curve: &DualCurve, s: f64) -> Result<(CurveJet, CurveJet)> {
    let (a, b) = curve.jets(s, 3)?;
    let speed = a.d1.norm();
    let tol = unit_speed_tol(curve);
    if (speed - 1.0).abs() > tol || a.d1.dot(&b.d1).abs() > tol {
        return Err(Error::NotUnitSpeed { s, speed });
    }
    Ok((a, b))
}

/// Euclidean Frenet data of a unit-speed real curve from its jet.
pub fn alpha_frame(a: &CurveJet, s: f64) -> Result<AlphaFrame> {
    let kappa = a.d2.norm();
    if !(kappa >= CURVATURE_EPS) {
        return Err(Error::VanishingCurvature { s });
    }
    let t = a.d1;
    let n = a.d2 * (1.0 / kappa);
    let b = t.cross(&n);
    Ok(AlphaFrame {
        t,
        n,
        b,
        kappa,
        tau: a.d3.dot(&b) / kappa,
        kappa_prime: a.d2.dot(&a.d3) / kappa,
    })
}

/// Frame together with the derivatives of its vectors, all from jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MovingFrame {
    pub t: DualVec3,
    pub n: DualVec3,
    pub b: DualVec3,
    pub dt: DualVec3,
    pub dn: DualVec3,
    pub db: DualVec3,
    pub kappa: DualScalar,
    pub tau: DualScalar,
}

/// Magnitudes (larger of real and dual norms) of `T' − κN`, `N' + κT − τB`
/// and `B' + τN`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residuals {
    pub tangent: f64,
    pub normal: f64,
    pub binormal: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.tangent.max(self.normal).max(self.binormal)
    }
}

/// Direct route: `κ = |γ''|`, `N = γ''/κ`, `B = T×N`, `τ = <N', B>` where
/// `N' = γ'''/κ − γ''<γ'',γ'''>/κ³`.
pub fn moving_frame(curve: &DualCurve, s: f64) -> Result<MovingFrame> {
    let (a, b) = unit_speed_jets(curve, s)?;
    moving_frame_from_jets(&a, &b, s)
}

fn moving_frame_from_jets(a: &CurveJet, b: &CurveJet, s: f64) -> Result<MovingFrame> {
    if !(a.d2.norm() >= CURVATURE_EPS) {
        return Err(Error::VanishingCurvature { s });
    }
    let g1 = dual(a.d1, b.d1);
    let g2 = dual(a.d2, b.d2);
    let g3 = dual(a.d3, b.d3);
    let kappa = g2.norm()?;
    let inv = kappa.recip()?;
    let n = g2.scale(inv);
    let b_vec = g1.cross(&n);
    let dn = g3.scale(inv) - g2.scale(g2.dot(&g3) * inv * inv * inv);
    let tau = dn.dot(&b_vec);
    let db = g2.cross(&n) + g1.cross(&dn);
    Ok(MovingFrame {
        t: g1,
        n,
        b: b_vec,
        dt: g2,
        dn,
        db,
        kappa,
        tau,
    })
}

pub fn residuals_of(f: &MovingFrame) -> Residuals {
    Residuals {
        tangent: (f.dt - f.n.scale(f.kappa)).magnitude(),
        normal: (f.dn + f.t.scale(f.kappa) - f.b.scale(f.tau)).magnitude(),
        binormal: (f.db + f.n.scale(f.tau)).magnitude(),
    }
}

/// Residuals of the Frenet equations for the direct frame at `s`.
pub fn frenet_residuals(curve: &DualCurve, s: f64) -> Result<Residuals> {
    Ok(residuals_of(&moving_frame(curve, s)?))
}

pub fn frenet_direct(curve: &DualCurve, s: f64) -> Result<FrenetData> {
    let (a, b) = unit_speed_jets(curve, s)?;
    let m = moving_frame_from_jets(&a, &b, s)?;
    Ok(FrenetData {
        s,
        t: m.t,
        n: m.n,
        b: Some(m.b),
        kappa: m.kappa,
        tau: Some(m.tau),
        alpha: alpha_frame(&a, s)?,
    })
}

/// Decomposition route through the Euclidean frame of `α`.
pub fn frenet_via_alpha(curve: &DualCurve, s: f64) -> Result<FrenetData> {
    let (a, b) = unit_speed_jets(curve, s)?;
    let fa = alpha_frame(&a, s)?;
    let (b1, b2, b3) = (b.d1, b.d2, b.d3);
    let k = fa.kappa;
    let b2n = b2.dot(&fa.n);
    let n_du = (b2 - fa.n * b2n) * (1.0 / k);
    let b_du = (fa.t.cross(&b2) + b1.cross(&fa.n) * k - fa.b * b2n) * (1.0 / k);
    let w = b3 - b2 * (fa.kappa_prime / k) + b1 * (k * k);
    let tau_du = (w.dot(&fa.b) - fa.tau * b2n) / k;
    Ok(FrenetData {
        s,
        t: dual(fa.t, b1),
        n: dual(fa.n, n_du),
        b: Some(dual(fa.b, b_du)),
        kappa: DualScalar::new(k, b2n),
        tau: Some(DualScalar::new(fa.tau, tau_du)),
        alpha: fa,
    })
}

/// Route for normalized curves, written with the Frenet frame of `β`.
pub fn frenet_normalized(curve: &DualCurve, s: f64) -> Result<FrenetData> {
    let (a, b) = unit_speed_jets(curve, s)?;
    let beta_speed = b.d1.norm();
    if (beta_speed - 1.0).abs() > unit_speed_tol(curve) {
        return Err(Error::NotNormalized { s, beta_speed });
    }
    let fa = alpha_frame(&a, s)?;
    let k = fa.kappa;
    let tb = b.d1;
    let kb = b.d2.norm();
    // all N_β, B_β terms carry a factor κ_β, so a straight β drops them
    let (nb, bb, kb, kb_prime, taub) = if kb < BETA_CURVATURE_EPS {
        (Vec3::zero(), Vec3::zero(), 0.0, 0.0, 0.0)
    } else {
        let nb = b.d2 * (1.0 / kb);
        let bb = tb.cross(&nb);
        (nb, bb, kb, b.d2.dot(&b.d3) / kb, b.d3.dot(&bb) / kb)
    };
    let nn = fa.n.dot(&nb);
    let n_du = (nb - fa.n * nn) * (kb / k);
    let b_du = (fa.t.cross(&nb) * kb + tb.cross(&fa.n) * k - fa.b * (kb * nn)) * (1.0 / k);
    // κ_α (κ_β/κ_α)' = κ_β' − κ_β κ_α'/κ_α
    let ratio_term = kb_prime - kb * fa.kappa_prime / k;
    let w = tb * (k * k - kb * kb) + nb * ratio_term + bb * (kb * taub);
    let tau_du = w.dot(&fa.b) / k - fa.tau / k * kb * nn;
    Ok(FrenetData {
        s,
        t: dual(fa.t, tb),
        n: dual(fa.n, n_du),
        b: Some(dual(fa.b, b_du)),
        kappa: DualScalar::new(k, kb * nn),
        tau: Some(DualScalar::new(fa.tau, tau_du)),
        alpha: fa,
    })
}

/// Planar frame: `T = γ'`, `N = J·γ'`, signed `κ = <γ'', J·γ'>`.
pub fn frenet_planar(curve: &DualCurve, s: f64) -> Result<FrenetData> {
    if curve.dim().get() != 2 {
        return Err(Error::InvalidParameter(
            "planar frame needs a curve in the plane".into(),
        ));
    }
    let (a, b) = unit_speed_jets(curve, s)?;
    let j = |v: Vec3| v.xy().perp().extend();
    let t = dual(a.d1, b.d1);
    let n = dual(j(a.d1), j(b.d1));
    let kappa = dual(a.d2, b.d2).dot(&n);
    if !(kappa.re.abs() >= CURVATURE_EPS) {
        return Err(Error::VanishingCurvature { s });
    }
    let alpha = AlphaFrame {
        t: a.d1,
        n: n.real,
        b: Vec3::xyz(0.0, 0.0, 1.0),
        kappa: kappa.re,
        tau: 0.0,
        kappa_prime: a.d3.dot(&n.real),
    };
    Ok(FrenetData {
        s,
        t,
        n,
        b: None,
        kappa,
        tau: None,
        alpha,
    })
}

/// Planar frame for planar curves, direct frame otherwise.
pub fn frenet_auto(curve: &DualCurve, s: f64) -> Result<FrenetData> {
    if curve.dim().get() == 2 {
        frenet_planar(curve, s)
    } else {
        frenet_direct(curve, s)
    }
}
