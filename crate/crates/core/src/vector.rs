// SPDX-License-Identifier: Apache-2.0

//! Fixed-size real vectors used as the real and dual parts of dual vectors.

use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::math;

/// A real vector of dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector<const N: usize>(pub [f64; N]);

pub type Vec2 = Vector<2>;
pub type Vec3 = Vector<3>;

impl<const N: usize> Default for Vector<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Vector<N> {
    pub const fn new(c: [f64; N]) -> Self {
        Self(c)
    }

    pub const fn zero() -> Self {
        Self([0.0; N])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        math::sqrt(self.norm_squared())
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.0.iter_mut().for_each(|c| *c *= k);
        out
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn as_array(&self) -> &[f64; N] {
        &self.0
    }
}

impl Vec3 {
    pub const fn xyz(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Self([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    /// Determinant of the 3x3 matrix with columns `a`, `b`, `c`.
    pub fn triple(a: &Self, b: &Self, c: &Self) -> f64 {
        a.dot(&b.cross(c))
    }

    /// First two components.
    pub fn xy(&self) -> Vec2 {
        Vector([self.0[0], self.0[1]])
    }
}

impl Vec2 {
    pub const fn xy(x: f64, y: f64) -> Self {
        Self([x, y])
    }

    /// Rotation by +90 degrees (counterclockwise).
    pub fn perp(&self) -> Self {
        Self([-self.0[1], self.0[0]])
    }

    /// Embed into the `z = 0` plane.
    pub fn extend(&self) -> Vec3 {
        Vector([self.0[0], self.0[1], 0.0])
    }
}

impl<const N: usize> Index<usize> for Vector<N> {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vector<N> {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for Vector<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl<const N: usize> AddAssign for Vector<N> {
    fn add_assign(&mut self, o: Self) {
        self.0.iter_mut().zip(o.0).for_each(|(a, b)| *a += b);
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self -= o;
        self
    }
}

impl<const N: usize> SubAssign for Vector<N> {
    fn sub_assign(&mut self, o: Self) {
        self.0.iter_mut().zip(o.0).for_each(|(a, b)| *a -= b);
    }
}

impl<const N: usize> Neg for Vector<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul<f64> for Vector<N> {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

impl<const N: usize> Mul<Vector<N>> for f64 {
    type Output = Vector<N>;
    fn mul(self, v: Vector<N>) -> Vector<N> {
        v.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_of_basis() {
        let e1 = Vec3::xyz(1.0, 0.0, 0.0);
        let e2 = Vec3::xyz(0.0, 1.0, 0.0);
        assert_eq!(e1.cross(&e2), Vec3::xyz(0.0, 0.0, 1.0));
        assert_eq!(Vec3::triple(&e1, &e2, &e1.cross(&e2)), 1.0);
    }

    #[test]
    fn perp_is_counterclockwise() {
        assert_eq!(Vec2::xy(1.0, 0.0).perp(), Vec2::xy(0.0, 1.0));
    }
}
