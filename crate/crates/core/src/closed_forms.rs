// SPDX-License-Identifier: Apache-2.0

//! Exact generators for the dual curves with constant curvature (plane) and
//! constant curvature and torsion (space), plus the tangent lift `α + εα'`.
//! Components are expression trees, so jets are exact.

use alloc::string::String;
use alloc::vec::Vec;

use crate::curve::{interior_grid, DualCurve, RealCurve};
use crate::error::{Error, Result};
use crate::expr::{Bindings, Expr};
use crate::math;
use crate::solver::{Prescription, SpatialConstants};
use crate::vector::Vec3;

fn bindings(pairs: &[(&str, f64)]) -> Bindings {
    pairs.iter().map(|&(k, v)| (String::from(k), v)).collect()
}

fn curve(components: &[&str], b: &Bindings) -> Result<RealCurve> {
    RealCurve::parse(components, b)
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(alloc::format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Planar curves of constant curvature `1/r + εa`; `λ(s) = as + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarConstantParams {
    pub r: f64,
    pub a: f64,
    pub b: f64,
}

/// `α = r(cos(s/r), sin(s/r))`,
/// `β = −ar²(cos(s/r), sin(s/r)) + r(as + b)(−sin(s/r), cos(s/r))`.
pub fn planar_constant(p: &PlanarConstantParams, domain: (f64, f64)) -> Result<DualCurve> {
    positive("r", p.r)?;
    let b = bindings(&[("r", p.r), ("a", p.a), ("b", p.b)]);
    let alpha = curve(&["r*cos(s/r)", "r*sin(s/r)"], &b)?;
    let beta = curve(
        &[
            "-a*r^2*cos(s/r) - r*(a*s + b)*sin(s/r)",
            "-a*r^2*sin(s/r) + r*(a*s + b)*cos(s/r)",
        ],
        &b,
    )?;
    DualCurve::new(alpha, beta, domain)
}

/// Curvature of the planar family's `β` as a function of its own arc length
/// `σ`: `1/(r√(b² − 2aσ))`. The arc length is measured so that `σ = 0`
/// where the original parameter is 0, on the branch where `as + b < 0`.
pub fn beta_spiral_curvature(p: &PlanarConstantParams, sigma: f64) -> Result<f64> {
    positive("r", p.r)?;
    if p.a == 0.0 {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let q = p.b * p.b - 2.0 * p.a * sigma;
    if !(q > 0.0) {
        return Err(Error::Domain {
            op: "beta_spiral_curvature",
            at: sigma,
        });
    }
    Ok(1.0 / (p.r * math::sqrt(q)))
}

/// Arc length of the planar family's `β` at original parameter `s`, matching
/// [`beta_spiral_curvature`]: `σ = (b² − (as + b)²)/(2a)`.
pub fn beta_spiral_arclength(p: &PlanarConstantParams, s: f64) -> f64 {
    let l = p.a * s + p.b;
    (p.b * p.b - l * l) / (2.0 * p.a)
}

/// Constants for dual curves with constant curvature `k₁ + εk₂` and torsion
/// `τ₁ + ετ₂`. The real part is the helix with `k₁ = r/m²`, `τ₁ = h/m²`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpatialConstantParams {
    pub k1: f64,
    pub tau1: f64,
    pub k2: f64,
    pub tau2: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl SpatialConstantParams {
    pub fn r(&self) -> f64 {
        self.k1 / (self.k1 * self.k1 + self.tau1 * self.tau1)
    }

    pub fn h(&self) -> f64 {
        self.tau1 / (self.k1 * self.k1 + self.tau1 * self.tau1)
    }

    pub fn m(&self) -> f64 {
        math::sqrt(self.r() * self.r() + self.h() * self.h())
    }

    /// `A = (r² − h²)k₂ + 2rhτ₂`.
    pub fn big_a(&self) -> f64 {
        let (r, h) = (self.r(), self.h());
        (r * r - h * h) * self.k2 + 2.0 * r * h * self.tau2
    }

    fn bindings(&self) -> Bindings {
        bindings(&[
            ("r", self.r()),
            ("h", self.h()),
            ("m", self.m()),
            ("k2", self.k2),
            ("tau2", self.tau2),
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("A", self.big_a()),
        ])
    }

    fn expr(&self, text: &str) -> Result<Expr> {
        let b = self.bindings();
        let names: Vec<&str> = b.keys().map(|k| k.as_str()).collect();
        Ok(Expr::parse_with_params(text, &names)?.bind(&b))
    }

    /// `x(s)` with `β' = xN_α + yB_α`.
    pub fn x_expr(&self) -> Result<Expr> {
        self.expr("r^2*k2*s/m^2 + h*(r*s*tau2/m^2 - c3*cos(s/m) + c2/m*sin(s/m) + c3) + c1")
    }

    pub fn y_expr(&self) -> Result<Expr> {
        self.expr("r*tau2 - h*k2 + c2*cos(s/m) + m*c3*sin(s/m)")
    }

    /// Solver initial data at `s = 0` reproducing this member of the family.
    pub fn solver_constants(&self) -> SpatialConstants {
        let (r, h, m) = (self.r(), self.h(), self.m());
        SpatialConstants {
            alpha0: Vec3::xyz(r, 0.0, 0.0),
            frame: [
                Vec3::xyz(0.0, r / m, h / m),
                Vec3::xyz(-1.0, 0.0, 0.0),
                Vec3::xyz(0.0, -h / m, r / m),
            ],
            x0: self.c1,
            y0: r * self.tau2 - h * self.k2 + self.c2,
            dy0: self.c3,
            beta0: Vec3::xyz(-self.big_a(), m * (self.c3 * h + self.c1), -self.c3 * r * m),
        }
    }

    pub fn prescription(&self, domain: (f64, f64)) -> Result<Prescription> {
        Prescription::spatial(
            Expr::num(self.k1),
            Expr::num(self.k2),
            Expr::num(self.tau1),
            Expr::num(self.tau2),
            domain,
        )
    }
}

fn helix(p: &SpatialConstantParams) -> Result<RealCurve> {
    curve(&["r*cos(s/m)", "r*sin(s/m)", "h*s/m"], &p.bindings())
}

/// `α = (r cos(s/m), r sin(s/m), hs/m)` and
/// `β = cos(s/m)(−A, B/m, −c₃rm) + sin(s/m)(−B/m, −A, c₂r) + s(c₃h, −c₂h/m, (r/m)(rτ₂ − hk₂))`
/// with `B = rs(rk₂ + hτ₂) + m²(c₃h + c₁)`.
pub fn spatial_constant(p: &SpatialConstantParams, domain: (f64, f64)) -> Result<DualCurve> {
    positive("k1", p.k1)?;
    let b = p.bindings();
    let big_b = "(r*s*(r*k2 + h*tau2) + m^2*(c3*h + c1))";
    let bx = alloc::format!("-A*cos(s/m) - {big_b}/m*sin(s/m) + c3*h*s");
    let by = alloc::format!("{big_b}/m*cos(s/m) - A*sin(s/m) - c2*h/m*s");
    let bz = "-c3*r*m*cos(s/m) + c2*r*sin(s/m) + r/m*(r*tau2 - h*k2)*s";
    let beta = curve(&[bx.as_str(), by.as_str(), bz], &b)?;
    DualCurve::new(helix(p)?, beta, domain)
}

/// Constant curvature `1/r` and torsion `ετ₂`.
pub fn circle_dual_torsion(
    r: f64,
    tau2: f64,
    c: [f64; 3],
    domain: (f64, f64),
) -> Result<DualCurve> {
    positive("r", r)?;
    let b = bindings(&[
        ("r", r),
        ("tau2", tau2),
        ("c1", c[0]),
        ("c2", c[1]),
        ("c3", c[2]),
    ]);
    let alpha = curve(&["r*cos(s/r)", "r*sin(s/r)", "0"], &b)?;
    let beta = curve(
        &[
            "-r*c1*sin(s/r)",
            "c1*r*cos(s/r)",
            "-c3*r^2*cos(s/r) + r*c2*sin(s/r) + r*tau2*s",
        ],
        &b,
    )?;
    DualCurve::new(alpha, beta, domain)
}

/// Constant real curvature `k₁` and real torsion `τ₁`; `β` is planar.
pub fn helix_planar_dual(k1: f64, tau1: f64, c: [f64; 3], domain: (f64, f64)) -> Result<DualCurve> {
    positive("k1", k1)?;
    let p = SpatialConstantParams {
        k1,
        tau1,
        c1: c[0],
        c2: c[1],
        c3: c[2],
        ..Default::default()
    };
    let b = p.bindings();
    let beta = curve(
        &[
            "-m*(c1 + c3*h)*sin(s/m) + h*c3*s",
            "m*(c1 + c3*h)*cos(s/m) - h*c2/m*s",
            "-c3*r*m*cos(s/m) + c2*r*sin(s/m)",
        ],
        &b,
    )?;
    DualCurve::new(helix(&p)?, beta, domain)
}

/// The circular helix `(r cos(s/m), r sin(s/m), hs/m)` with `m = √(r² + h²)`.
pub fn circular_helix(r: f64, h: f64) -> Result<RealCurve> {
    positive("r", r)?;
    let m = math::sqrt(r * r + h * h);
    curve(
        &["r*cos(s/m)", "r*sin(s/m)", "h*s/m"],
        &bindings(&[("r", r), ("h", h), ("m", m)]),
    )
}

/// Largest `|det(f', f'', f''')|` over an interior grid.
pub fn max_torsion_determinant(c: &RealCurve, domain: (f64, f64), grid: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in interior_grid(domain.0, domain.1, grid.max(2)) {
        let j = c.jet(s, 3)?;
        worst = worst.max(Vec3::triple(&j.d1, &j.d2, &j.d3).abs());
    }
    Ok(worst)
}

/// True when `det(f', f'', f''')` stays below `tol` on the grid.
pub fn planarity_check(c: &RealCurve, domain: (f64, f64), grid: usize, tol: f64) -> Result<bool> {
    Ok(max_torsion_determinant(c, domain, grid)? < tol)
}

/// `γ = α + εα'` for a unit-speed `α` with symbolic components.
pub fn tangent_lift(alpha: &RealCurve, domain: (f64, f64)) -> Result<DualCurve> {
    let beta = alpha
        .derivative()
        .ok_or(Error::UnsupportedSource("a curve with symbolic components"))?;
    for s in interior_grid(domain.0, domain.1, crate::curve::DEFAULT_GRID) {
        let speed = alpha.jet(s, 1)?.d1.norm();
        if (speed - 1.0).abs() > crate::curve::SYMBOLIC_TOL {
            return Err(Error::NotUnitSpeed { s, speed });
        }
    }
    DualCurve::new(alpha.clone(), beta, domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{DEFAULT_GRID, SYMBOLIC_TOL};
    use crate::dual::DualScalar;
    use crate::frenet::{frenet_direct, frenet_planar};

    #[test]
    fn planar_family_curvature() {
        let p = PlanarConstantParams {
            r: 2.0,
            a: 0.3,
            b: -1.0,
        };
        let c = planar_constant(&p, (0.0, 5.0)).unwrap();
        assert!(c.is_unit_speed(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
        for s in [0.1, 2.0, 4.9] {
            let f = frenet_planar(&c, s).unwrap();
            assert!(f.kappa.distance(DualScalar::new(0.5, 0.3)) < 1e-12);
        }
    }

    #[test]
    fn spiral_curvature_values() {
        let p = PlanarConstantParams {
            r: 1.0,
            a: -0.5,
            b: 0.0,
        };
        assert!((beta_spiral_curvature(&p, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let p = PlanarConstantParams { r: 2.0, ..p };
        assert!((beta_spiral_curvature(&p, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(beta_spiral_curvature(&p, -1.0).is_err());
        assert!((beta_spiral_arclength(&p, 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spatial_example_without_constants() {
        let p = SpatialConstantParams {
            k1: 1.0,
            k2: 1.0,
            ..Default::default()
        };
        let c = spatial_constant(&p, (0.0, 5.0)).unwrap();
        for s in [0.3, 1.7, 4.0] {
            let (sn, cs) = (math::sin(s), math::cos(s));
            let expect = Vec3::xyz(-cs - s * sn, s * cs - sn, 0.0);
            assert!((c.position(s).unwrap().1 - expect).max_abs() < 1e-13);
        }
    }

    #[test]
    fn corollaries_match_theorem() {
        let c = [0.7, -0.4, 1.3];
        let d = (0.0, 6.0);
        let a = circle_dual_torsion(1.5, 0.8, c, d).unwrap();
        let p = SpatialConstantParams {
            k1: 1.0 / 1.5,
            tau2: 0.8,
            c1: c[0],
            c2: c[1],
            c3: c[2],
            ..Default::default()
        };
        let b = spatial_constant(&p, d).unwrap();
        let a53 = helix_planar_dual(0.12, 0.16, c, d).unwrap();
        let p53 = SpatialConstantParams {
            k1: 0.12,
            tau1: 0.16,
            c1: c[0],
            c2: c[1],
            c3: c[2],
            ..Default::default()
        };
        let b53 = spatial_constant(&p53, d).unwrap();
        for s in [0.0, 1.0, 3.3, 6.0] {
            let (x, y) = (a.jets(s, 3).unwrap(), b.jets(s, 3).unwrap());
            assert!((x.1.position - y.1.position).max_abs() < 1e-12);
            assert!((x.1.d3 - y.1.d3).max_abs() < 1e-12);
            let (x, y) = (a53.position(s).unwrap(), b53.position(s).unwrap());
            assert!((x.0 - y.0).max_abs() < 1e-12 && (x.1 - y.1).max_abs() < 1e-12);
        }
        assert!(planarity_check(&a53.beta, d, 101, 1e-10).unwrap());
    }

    #[test]
    fn tangent_lift_of_helix() {
        let c = tangent_lift(&circular_helix(3.0, 4.0).unwrap(), (0.0, 10.0)).unwrap();
        let f = frenet_direct(&c, 2.0).unwrap();
        assert!(f.kappa.distance(DualScalar::real(0.12)) < 1e-14);
        assert!(f.tau.unwrap().distance(DualScalar::real(0.16)) < 1e-14);
        let scaled = RealCurve::parse(&["2*s", "0", "0"], &Bindings::new()).unwrap();
        assert!(matches!(
            tangent_lift(&scaled, (0.0, 1.0)),
            Err(Error::NotUnitSpeed { .. })
        ));
    }
}
