// SPDX-License-Identifier: Apache-2.0

//! Quadrature, Runge–Kutta integration with dense output, and inversion of
//! monotone functions.

mod invert;
mod ode;
mod quad;

use core::fmt;

pub use invert::{invert_monotone, invert_monotone_with_derivative};
pub use ode::{ode_solve, DenseSolution, IntegratorConfig, Method, OdeSystem};
pub use quad::{quad, quad_with_depth};

#[derive(Clone, Debug, PartialEq)]
pub enum NumericsError {
    /// Adaptive quadrature hit its recursion limit on `[a, b]`.
    MaxSubdivisions {
        a: f64,
        b: f64,
    },
    MaxSteps {
        s: f64,
        steps: usize,
    },
    NonFiniteState {
        s: f64,
    },
    TargetOutOfBracket {
        target: f64,
        lo: f64,
        hi: f64,
    },
    InvalidConfig(&'static str),
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MaxSubdivisions { a, b } => {
                write!(f, "quadrature did not converge on [{a}, {b}]")
            }
            Self::MaxSteps { s, steps } => {
                write!(f, "integration stopped at s={s} after {steps} steps")
            }
            Self::NonFiniteState { s } => {
                write!(f, "integration produced a non-finite state at s={s}")
            }
            Self::TargetOutOfBracket { target, lo, hi } => {
                write!(f, "target {target} outside bracket values [{lo}, {hi}]")
            }
            Self::InvalidConfig(what) => write!(f, "invalid integrator configuration: {what}"),
        }
    }
}

impl core::error::Error for NumericsError {}
