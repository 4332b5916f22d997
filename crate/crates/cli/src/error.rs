// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use dualcurve_core::Error;

/// Exit codes are a stable contract for scripts.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const NUMERICAL: i32 = 4;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: exit::INPUT,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: exit::NUMERICAL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VanishingCurvature { .. } | Error::PureDualVector => exit::DEGENERATE,
            Error::Numerics(_) => exit::NUMERICAL,
            _ => exit::INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::input(format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
