// SPDX-License-Identifier: Apache-2.0

//! Differential geometry of curves in dual space `D³ = R³ + εR³` with `ε² = 0`.
//!
//! A dual curve `γ = α + εβ` must pass an admissibility check before it can
//! be put in arc length. After that it carries a dual Frenet frame with dual
//! curvature and torsion. The solver runs the other way, from prescribed
//! curvature and torsion back to a curve.

#![no_std]
// `!(x < y)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod closed_forms;
pub mod curve;
pub mod dual;
pub mod error;
pub mod expr;
pub mod frenet;
mod math;
pub mod numerics;
pub mod solver;
pub mod vector;

pub use dual::{DualScalar, DualVec2, DualVec3, DualVector};
pub use error::{AdmissibilityFailure, Error, Result};
pub use vector::{Vec2, Vec3, Vector};
