// SPDX-License-Identifier: Apache-2.0

// Worked examples with known Frenet data, plus the speed and normalization
// classifications they imply.

use dualcurve_core::closed_forms::{
    circular_helix, planar_constant, tangent_lift, PlanarConstantParams,
};
use dualcurve_core::curve::{DualCurve, DEFAULT_GRID, SYMBOLIC_TOL};
use dualcurve_core::expr::Bindings;
use dualcurve_core::frenet::{frenet_auto, frenet_direct, frenet_normalized, frenet_via_alpha};
use dualcurve_core::{DualScalar, Error};

fn circle_line() -> DualCurve {
    DualCurve::parse(
        &["cos(s)", "sin(s)", "0"],
        &["0", "0", "s"],
        (0.0, 6.0),
        &Bindings::new(),
    )
    .unwrap()
}

#[test]
fn circle_line_is_normalized_with_unit_dual_torsion() {
    let c = circle_line();
    assert!(c.is_unit_speed(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
    assert!(c.is_normalized(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
    for s in [0.5, 2.0, 5.5] {
        for f in [
            frenet_direct(&c, s),
            frenet_via_alpha(&c, s),
            frenet_normalized(&c, s),
        ] {
            let f = f.unwrap();
            assert!(f.kappa.distance(DualScalar::new(1.0, 0.0)) < 1e-12);
            assert!(f.tau.unwrap().distance(DualScalar::new(0.0, 1.0)) < 1e-12);
            assert!(f.orthonormality_error() < 1e-12);
        }
    }
}

#[test]
fn helix_tangent_lift_keeps_euclidean_invariants() {
    let c = tangent_lift(&circular_helix(3.0, 4.0).unwrap(), (0.0, 10.0)).unwrap();
    for s in [0.0, 3.3, 9.9] {
        let f = frenet_direct(&c, s).unwrap();
        assert!(f.kappa.distance(DualScalar::new(0.12, 0.0)) < 1e-12);
        assert!(f.tau.unwrap().distance(DualScalar::new(0.16, 0.0)) < 1e-12);
    }
    // |β'| = κ_α = 0.12, so this lift is not normalized
    assert!(!c.is_normalized(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
    assert!(matches!(
        frenet_normalized(&c, 1.0),
        Err(Error::NotNormalized { .. })
    ));
}

#[test]
fn dilation_scales_invariants() {
    let c = circle_line().dilate(2.0).unwrap();
    assert_eq!(c.domain(), (0.0, 12.0));
    assert!(c.is_unit_speed(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
    let f = frenet_direct(&c, 3.0).unwrap();
    assert!(f.kappa.distance(DualScalar::new(0.5, 0.0)) < 1e-12);
    assert!(f.tau.unwrap().distance(DualScalar::new(0.0, 0.5)) < 1e-12);
    assert!(circle_line().dilate(0.0).is_err());
}

#[test]
fn planar_family_is_normalized_only_without_drift() {
    let d = (0.0, 4.0);
    let drifting = planar_constant(
        &PlanarConstantParams {
            r: 1.0,
            a: 0.5,
            b: 1.0,
        },
        d,
    )
    .unwrap();
    assert!(
        !drifting
            .is_normalized(DEFAULT_GRID, SYMBOLIC_TOL)
            .unwrap()
            .ok
    );
    let steady = planar_constant(
        &PlanarConstantParams {
            r: 1.0,
            a: 0.0,
            b: 1.0,
        },
        d,
    )
    .unwrap();
    assert!(steady.is_normalized(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
    let f = frenet_auto(&steady, 1.0).unwrap();
    assert!(f.kappa.distance(DualScalar::new(1.0, 0.0)) < 1e-12);
    assert!(f.tau.is_none() && f.b.is_none());
}

#[test]
fn constant_dual_part_is_not_normalized() {
    let c = DualCurve::parse(
        &["cos(s)", "sin(s)", "0"],
        &["1", "2", "3"],
        (0.0, 1.0),
        &Bindings::new(),
    )
    .unwrap();
    assert!(!c.is_normalized(DEFAULT_GRID, SYMBOLIC_TOL).unwrap().ok);
}

#[test]
fn straight_real_part_has_no_normal() {
    let c = DualCurve::parse(
        &["s", "0", "0"],
        &["0", "s", "0"],
        (0.0, 1.0),
        &Bindings::new(),
    )
    .unwrap();
    assert!(matches!(
        frenet_direct(&c, 0.5),
        Err(Error::VanishingCurvature { .. })
    ));
}
