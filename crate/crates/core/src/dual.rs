// SPDX-License-Identifier: Apache-2.0

//! Dual numbers `a + εb` with `ε² = 0`, and dual vectors `v + εv*`.
//!
//! The inner product on dual vectors extends the Euclidean one by bilinearity:
//!
//! ```text
//! <a1 + εb1, a2 + εb2> = <a1, a2> + ε(<a1, b2> + <b1, a2>)
//! ```
//!
//! Note the real part is `<a1, a2>`. Pairing `a1` with `b1` there would not be
//! bilinear and would break identities such as
//! `<γ', γ'> = <α', α'> + 2ε<α', β'>`.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::math;
use crate::vector::Vector;

/// A dual number `re + ε·du`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualScalar {
    pub re: f64,
    pub du: f64,
}

impl DualScalar {
    pub const ZERO: Self = Self::new(0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0);
    pub const EPSILON: Self = Self::new(0.0, 1.0);

    pub const fn new(re: f64, du: f64) -> Self {
        Self { re, du }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, du: 0.0 }
    }

    /// Lift a smooth real function: `f(a) + ε·b·f'(a)`.
    pub fn apply(self, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.re), self.du * df(self.re))
    }

    pub fn sqrt(self) -> Result<Self> {
        if self.re < 0.0 || (self.re == 0.0 && self.du != 0.0) {
            return Err(Error::Domain {
                op: "sqrt",
                at: self.re,
            });
        }
        if self.re == 0.0 {
            return Ok(Self::ZERO);
        }
        let r = math::sqrt(self.re);
        Ok(Self::new(r, self.du / (2.0 * r)))
    }

    pub fn sin(self) -> Self {
        self.apply(math::sin, math::cos)
    }

    pub fn cos(self) -> Self {
        self.apply(math::cos, |x| -math::sin(x))
    }

    pub fn exp(self) -> Self {
        self.apply(math::exp, math::exp)
    }

    pub fn ln(self) -> Result<Self> {
        if self.re <= 0.0 {
            return Err(Error::Domain {
                op: "log",
                at: self.re,
            });
        }
        Ok(self.apply(math::ln, |x| 1.0 / x))
    }

    /// `1/(a + εb) = 1/a − ε b/a²`, defined only for `a ≠ 0`.
    pub fn recip(self) -> Result<Self> {
        if self.re == 0.0 {
            return Err(Error::Domain {
                op: "reciprocal",
                at: self.re,
            });
        }
        Ok(Self::new(1.0 / self.re, -self.du / (self.re * self.re)))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.recip()?)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.du * k)
    }

    /// Componentwise distance, the max of the real and dual gaps.
    pub fn distance(self, other: Self) -> f64 {
        (self.re - other.re).abs().max((self.du - other.du).abs())
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.du < 0.0 {
            write!(f, "{} - {}ε", self.re, -self.du)
        } else {
            write!(f, "{} + {}ε", self.re, self.du)
        }
    }
}

impl From<f64> for DualScalar {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

impl Add for DualScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.du + o.du)
    }
}

impl AddAssign for DualScalar {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for DualScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.du - o.du)
    }
}

impl Neg for DualScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl Mul for DualScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

impl Mul<f64> for DualScalar {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

/// Dual division. Yields non-finite components when `rhs.re == 0`; use
/// [`DualScalar::checked_div`] to get an error instead.
impl Div for DualScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = Self::new(1.0 / rhs.re, -rhs.du / (rhs.re * rhs.re));
        self * inv
    }
}

/// A dual vector `real + ε·dual`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DualVector<const N: usize> {
    pub real: Vector<N>,
    pub dual: Vector<N>,
}

pub type DualVec2 = DualVector<2>;
pub type DualVec3 = DualVector<3>;

impl<const N: usize> DualVector<N> {
    pub const fn new(real: Vector<N>, dual: Vector<N>) -> Self {
        Self { real, dual }
    }

    pub const fn zero() -> Self {
        Self::new(Vector::zero(), Vector::zero())
    }

    pub fn from_real(real: Vector<N>) -> Self {
        Self::new(real, Vector::zero())
    }

    /// The extended (bilinear) inner product.
    pub fn dot(&self, w: &Self) -> DualScalar {
        DualScalar::new(
            self.real.dot(&w.real),
            self.real.dot(&w.dual) + self.dual.dot(&w.real),
        )
    }

    pub fn norm(&self) -> Result<DualScalar> {
        if self.real.norm_squared() == 0.0 {
            return Err(Error::PureDualVector);
        }
        self.dot(self).sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let inv = self.norm()?.recip()?;
        Ok(self.scale(inv))
    }

    /// Multiply by a dual scalar.
    pub fn scale(&self, k: DualScalar) -> Self {
        Self::new(self.real * k.re, self.dual * k.re + self.real * k.du)
    }

    pub fn scale_real(&self, k: f64) -> Self {
        Self::new(self.real * k, self.dual * k)
    }

    /// Max of the Euclidean norms of the real and dual parts.
    pub fn magnitude(&self) -> f64 {
        self.real.norm().max(self.dual.norm())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self.real - other.real)
            .max_abs()
            .max((self.dual - other.dual).max_abs())
    }
}

impl DualVec3 {
    /// Cross product extended by bilinearity.
    pub fn cross(&self, w: &Self) -> Self {
        Self::new(
            self.real.cross(&w.real),
            self.real.cross(&w.dual) + self.dual.cross(&w.real),
        )
    }
}

impl DualVec2 {
    /// Rotation of both parts by +90 degrees.
    pub fn perp(&self) -> Self {
        Self::new(self.real.perp(), self.dual.perp())
    }
}

impl<const N: usize> Add for DualVector<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.real + o.real, self.dual + o.dual)
    }
}

impl<const N: usize> Sub for DualVector<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.real - o.real, self.dual - o.dual)
    }
}

impl<const N: usize> Neg for DualVector<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.real, -self.dual)
    }
}

impl<const N: usize> Mul<DualScalar> for DualVector<N> {
    type Output = Self;
    fn mul(self, k: DualScalar) -> Self {
        self.scale(k)
    }
}
