// SPDX-License-Identifier: Apache-2.0

//! Thin float helpers over `libm` so the crate builds without `std`.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn tan(x: f64) -> f64 {
    libm::tan(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// Integer power by repeated squaring; exact for small exponents.
pub fn powi(mut base: f64, exp: i32) -> f64 {
    let mut n = exp.unsigned_abs();
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    if exp < 0 {
        1.0 / acc
    } else {
        acc
    }
}
