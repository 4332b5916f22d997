// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;
use core::fmt;

use crate::expr::{EvalError, ParseError};
use crate::numerics::NumericsError;

/// Which of the two arc-length conditions a curve violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    /// `|alpha'|` vanishes somewhere on the domain.
    NonRegularRealPart,
    /// `<alpha', beta'>` is not identically zero.
    NotOrthogonal,
}

impl fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonRegularRealPart => f.write_str("real part is not regular (|alpha'| vanishes)"),
            Self::NotOrthogonal => f.write_str(
                "velocities of real and dual parts are not orthogonal (<alpha', beta'> != 0)",
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A real function was lifted outside its domain.
    Domain {
        op: &'static str,
        at: f64,
    },
    /// Norm or normalization of a dual vector whose real part is zero.
    PureDualVector,
    OutOfDomain {
        s: f64,
        min: f64,
        max: f64,
    },
    NotAdmissible(AdmissibilityFailure),
    NotUnitSpeed {
        s: f64,
        speed: f64,
    },
    NotNormalized {
        s: f64,
        beta_speed: f64,
    },
    /// Curvature of the real part vanishes; the normal is undefined.
    VanishingCurvature {
        s: f64,
    },
    NonPositiveK1 {
        s: f64,
        value: f64,
    },
    InvalidParameter(String),
    UnsupportedSource(&'static str),
    Parse(ParseError),
    Eval(EvalError),
    Numerics(NumericsError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain { op, at } => write!(f, "{op} is not defined at {at}"),
            Self::PureDualVector => f.write_str("dual vector has zero real part"),
            Self::OutOfDomain { s, min, max } => {
                write!(f, "parameter {s} outside domain [{min}, {max}]")
            }
            Self::NotAdmissible(why) => {
                write!(f, "curve cannot be parametrized by arc length: {why}")
            }
            Self::NotUnitSpeed { s, speed } => {
                write!(f, "curve is not unit speed at s={s} (|alpha'|={speed})")
            }
            Self::NotNormalized { s, beta_speed } => {
                write!(f, "curve is not normalized at s={s} (|beta'|={beta_speed})")
            }
            Self::VanishingCurvature { s } => {
                write!(f, "curvature of the real part vanishes at s={s}")
            }
            Self::NonPositiveK1 { s, value } => {
                write!(f, "k1 must be positive, got {value} at s={s}")
            }
            Self::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Self::UnsupportedSource(what) => write!(f, "operation needs {what}"),
            Self::Parse(e) => write!(f, "{e}"),
            Self::Eval(e) => write!(f, "{e}"),
            Self::Numerics(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Self::Parse(e)
    }
}

impl From<EvalError> for Error {
    fn from(e: EvalError) -> Self {
        Self::Eval(e)
    }
}

impl From<NumericsError> for Error {
    fn from(e: NumericsError) -> Self {
        Self::Numerics(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
