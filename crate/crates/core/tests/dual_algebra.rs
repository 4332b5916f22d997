// SPDX-License-Identifier: Apache-2.0

// Dual arithmetic against an independent model: a + εb as the 2×2 matrix
// [[a, b], [0, a]], and dual vectors through their component scalars.

use dualcurve_core::{DualScalar, DualVec3, Vec3};
use proptest::prelude::*;

type M = [[f64; 2]; 2];

fn mat(x: DualScalar) -> M {
    [[x.re, x.du], [0.0, x.re]]
}

fn matmul(a: M, b: M) -> M {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn close(a: DualScalar, b: DualScalar, tol: f64) -> bool {
    let scale = 1.0 + a.re.abs().max(a.du.abs()).max(b.re.abs()).max(b.du.abs());
    (a.re - b.re).abs() <= tol * scale && (a.du - b.du).abs() <= tol * scale
}

fn scalar() -> impl Strategy<Value = DualScalar> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| DualScalar::new(a, b))
}

fn vec3() -> impl Strategy<Value = Vec3> {
    prop::array::uniform3(-5.0..5.0f64).prop_map(Vec3::new)
}

fn dvec() -> impl Strategy<Value = DualVec3> {
    (vec3(), vec3()).prop_map(|(r, d)| DualVec3::new(r, d))
}

fn comp(v: &DualVec3, i: usize) -> DualScalar {
    DualScalar::new(v.real[i], v.dual[i])
}

#[test]
fn epsilon_squares_to_zero() {
    assert_eq!(DualScalar::EPSILON * DualScalar::EPSILON, DualScalar::ZERO);
}

proptest! {
    #[test]
    fn product_matches_matrix_model(x in scalar(), y in scalar()) {
        let m = matmul(mat(x), mat(y));
        let p = x * y;
        prop_assert!(close(p, DualScalar::new(m[0][0], m[0][1]), 1e-12));
        prop_assert_eq!(m[1][0], 0.0);
    }

    #[test]
    fn quotient_inverts_product(x in scalar(), y in scalar()) {
        prop_assume!(y.re.abs() > 0.1);
        prop_assert!(close((x * y) / y, x, 1e-10));
    }

    #[test]
    fn sqrt_squares_back(x in scalar()) {
        prop_assume!(x.re > 0.01);
        let r = x.sqrt().unwrap();
        prop_assert!(close(r * r, x, 1e-10));
    }

    #[test]
    fn inner_product_is_componentwise(u in dvec(), v in dvec()) {
        let want = (0..3).fold(DualScalar::ZERO, |acc, i| acc + comp(&u, i) * comp(&v, i));
        prop_assert!(close(u.dot(&v), want, 1e-12));
    }

    #[test]
    fn cross_product_is_componentwise(u in dvec(), v in dvec()) {
        let w = u.cross(&v);
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let want = comp(&u, j) * comp(&v, k) - comp(&u, k) * comp(&v, j);
            prop_assert!(close(comp(&w, i), want, 1e-12));
        }
        prop_assert!(close(w.dot(&u), DualScalar::ZERO, 1e-10));
        prop_assert!(close(w.dot(&v), DualScalar::ZERO, 1e-10));
    }

    #[test]
    fn normalized_vectors_have_unit_dual_length(u in dvec()) {
        prop_assume!(u.real.norm() > 0.1);
        let n = u.normalize().unwrap();
        prop_assert!(close(n.dot(&n), DualScalar::ONE, 1e-10));
        let len = u.norm().unwrap();
        prop_assert!(close(len * len, u.dot(&u), 1e-10));
    }
}

#[test]
fn pure_dual_vectors_have_no_norm() {
    let v = DualVec3::new(Vec3::zero(), Vec3::xyz(1.0, 0.0, 0.0));
    assert!(v.norm().is_err());
    assert!(v.normalize().is_err());
}
