// SPDX-License-Identifier: Apache-2.0

//! Run settings from a TOML file and command-line flags. Flags win.
//!
//! Every flag has a same-named key in the file (with `-` written as `_`).
//! Lists such as `alpha` are TOML arrays in the file and comma-separated on
//! the command line. `--param name=value` becomes the `[params]` table.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// TOML file with run settings; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (CSV, or SVG for `plot`). CSV goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of sample points, endpoints included.
    #[arg(long)]
    pub samples: Option<usize>,
    /// RK4 step in arc length.
    #[arg(long)]
    pub step: Option<f64>,
    /// Pass/fail tolerance for verification summaries.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Option<f64>,
    /// circle-line | helix-lift | cos-squared
    #[arg(long)]
    pub builtin: Option<String>,
    /// planar-constant | spatial-constant | circle-dual-torsion | helix-planar-dual | tangent-lift
    #[arg(long)]
    pub family: Option<String>,
    /// Components of the real part, e.g. "cos(s),sin(s),0".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Components of the dual part.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Named constant, repeatable: --param r=3 --param h=4.
    #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    pub params: Vec<String>,
    /// Reparametrize the curve by arc length of its real part first.
    #[arg(long)]
    pub reparametrize: bool,
    /// Arc-length value assigned to the start of the domain.
    #[arg(long, allow_hyphen_values = true)]
    pub s_start: Option<f64>,
    /// 2 or 3 for `solve`.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub k1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub dy0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    /// Initial point of the real part, "x,y[,z]".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha0: Option<String>,
    /// Initial point of the dual part, "x,y[,z]".
    #[arg(long, allow_hyphen_values = true)]
    pub beta0: Option<String>,
    /// Initial frame "T;N;B", each a comma-separated vector.
    #[arg(long, allow_hyphen_values = true)]
    pub frame: Option<String>,
    /// rk4 | rk45
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub rtol: Option<f64>,
    #[arg(long)]
    pub atol: Option<f64>,
    /// CSV produced by another command (for `plot`).
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// Resolved settings; also the schema of the TOML file.
#[derive(Deserialize, Debug, Clone, Default, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub out: Option<PathBuf>,
    pub samples: Option<usize>,
    pub step: Option<f64>,
    pub tol: Option<f64>,
    pub s0: Option<f64>,
    pub s1: Option<f64>,
    pub builtin: Option<String>,
    pub family: Option<String>,
    pub alpha: Option<Vec<String>>,
    pub beta: Option<Vec<String>>,
    pub params: BTreeMap<String, f64>,
    pub reparametrize: Option<bool>,
    pub s_start: Option<f64>,
    pub dim: Option<usize>,
    pub k1: Option<String>,
    pub k2: Option<String>,
    pub tau1: Option<String>,
    pub tau2: Option<String>,
    pub x0: Option<f64>,
    pub y0: Option<f64>,
    pub dy0: Option<f64>,
    pub lambda0: Option<f64>,
    pub theta0: Option<f64>,
    pub alpha0: Option<Vec<f64>>,
    pub beta0: Option<Vec<f64>>,
    pub frame: Option<Vec<Vec<f64>>>,
    pub method: Option<String>,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub input: Option<PathBuf>,
}

/// Split on commas outside parentheses.
pub fn split_components(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out
}

fn parse_numbers(what: &str, text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("--{what}: `{t}` is not a number")))
        })
        .collect()
}

impl Options {
    fn into_settings(self) -> CliResult<Settings> {
        let mut params = BTreeMap::new();
        for p in &self.params {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| CliError::input(format!("--param `{p}` must be NAME=VALUE")))?;
            let value: f64 = value.trim().parse().map_err(|_| {
                CliError::input(format!("--param {name}: `{value}` is not a number"))
            })?;
            params.insert(name.trim().to_string(), value);
        }
        let frame = match &self.frame {
            Some(f) => Some(
                f.split(';')
                    .map(|v| parse_numbers("frame", v))
                    .collect::<CliResult<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(Settings {
            out: self.out,
            samples: self.samples,
            step: self.step,
            tol: self.tol,
            s0: self.s0,
            s1: self.s1,
            builtin: self.builtin,
            family: self.family,
            alpha: self.alpha.as_deref().map(split_components),
            beta: self.beta.as_deref().map(split_components),
            params,
            reparametrize: self.reparametrize.then_some(true),
            s_start: self.s_start,
            dim: self.dim,
            k1: self.k1,
            k2: self.k2,
            tau1: self.tau1,
            tau2: self.tau2,
            x0: self.x0,
            y0: self.y0,
            dy0: self.dy0,
            lambda0: self.lambda0,
            theta0: self.theta0,
            alpha0: self
                .alpha0
                .as_deref()
                .map(|t| parse_numbers("alpha0", t))
                .transpose()?,
            beta0: self
                .beta0
                .as_deref()
                .map(|t| parse_numbers("beta0", t))
                .transpose()?,
            frame,
            method: self.method,
            rtol: self.rtol,
            atol: self.atol,
            input: self.input,
        })
    }

    /// Flags layered over the config file, if one was given.
    pub fn resolve(self) -> CliResult<Settings> {
        let file = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        Ok(self.into_settings()?.over(file))
    }
}

impl Settings {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
            .map_err(|e| CliError::input(format!("config {}: {}", path.display(), e.message)))
    }

    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::input(e.to_string()))
    }

    /// Fill every unset field of `self` from `base`.
    pub fn over(self, base: Settings) -> Settings {
        let mut params = base.params;
        params.extend(self.params);
        Settings {
            out: self.out.or(base.out),
            samples: self.samples.or(base.samples),
            step: self.step.or(base.step),
            tol: self.tol.or(base.tol),
            s0: self.s0.or(base.s0),
            s1: self.s1.or(base.s1),
            builtin: self.builtin.or(base.builtin),
            family: self.family.or(base.family),
            alpha: self.alpha.or(base.alpha),
            beta: self.beta.or(base.beta),
            params,
            reparametrize: self.reparametrize.or(base.reparametrize),
            s_start: self.s_start.or(base.s_start),
            dim: self.dim.or(base.dim),
            k1: self.k1.or(base.k1),
            k2: self.k2.or(base.k2),
            tau1: self.tau1.or(base.tau1),
            tau2: self.tau2.or(base.tau2),
            x0: self.x0.or(base.x0),
            y0: self.y0.or(base.y0),
            dy0: self.dy0.or(base.dy0),
            lambda0: self.lambda0.or(base.lambda0),
            theta0: self.theta0.or(base.theta0),
            alpha0: self.alpha0.or(base.alpha0),
            beta0: self.beta0.or(base.beta0),
            frame: self.frame.or(base.frame),
            method: self.method.or(base.method),
            rtol: self.rtol.or(base.rtol),
            atol: self.atol.or(base.atol),
            input: self.input.or(base.input),
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_respect_parentheses() {
        assert_eq!(
            split_components("cos(s), sin(2*(s+1)) ,0"),
            ["cos(s)", "sin(2*(s+1))", "0"]
        );
    }

    #[test]
    fn flags_override_file() {
        let file = Settings::from_toml(
            "samples = 10\nk1 = \"1\"\nalpha = [\"cos(s)\", \"sin(s)\"]\n[params]\nr = 3.0\nh = 4.0\n",
        )
        .unwrap();
        let cli = Options {
            samples: Some(20),
            params: vec!["h=5".into()],
            ..Default::default()
        };
        let s = cli.into_settings().unwrap().over(file);
        assert_eq!(s.samples, Some(20));
        assert_eq!(s.k1.as_deref(), Some("1"));
        assert_eq!(s.param("r"), Some(3.0));
        assert_eq!(s.param("h"), Some(5.0));
        assert_eq!(s.alpha.unwrap().len(), 2);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Settings::from_toml("sample = 3").is_err());
    }
}
