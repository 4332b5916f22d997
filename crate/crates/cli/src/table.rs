// SPDX-License-Identifier: Apache-2.0

//! The sample table every curve command writes. `plot` reads it back.

use std::io::{Read, Write};

use dualcurve_core::curve::DualCurve;
use dualcurve_core::frenet::{frenet_auto, moving_frame, residuals_of};
use dualcurve_core::{DualVec3, Vec3};

use crate::error::{CliError, CliResult};

const AXES: [&str; 3] = ["x", "y", "z"];

pub fn header() -> Vec<String> {
    let mut h = vec!["s".to_string()];
    for v in [
        "alpha", "beta", "T_re", "T_du", "N_re", "N_du", "B_re", "B_du",
    ] {
        h.extend(AXES.iter().map(|a| format!("{v}_{a}")));
    }
    h.extend(
        [
            "kappa_re", "kappa_du", "tau_re", "tau_du", "res_T", "res_N", "res_B",
        ]
        .map(String::from),
    );
    h
}

/// One sampled row; planar curves have no binormal or torsion.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub s: f64,
    pub alpha: Vec3,
    pub beta: Vec3,
    pub t: DualVec3,
    pub n: DualVec3,
    pub b: Option<DualVec3>,
    pub kappa: (f64, f64),
    pub tau: Option<(f64, f64)>,
    pub residuals: [f64; 3],
}

/// 17 significant digits; NaN as `nan`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

impl Row {
    fn fields(&self) -> Vec<String> {
        let mut f = vec![fmt_num(self.s)];
        let mut push = |v: Vec3| f.extend(v.as_array().iter().map(|&x| fmt_num(x)));
        push(self.alpha);
        push(self.beta);
        push(self.t.real);
        push(self.t.dual);
        push(self.n.real);
        push(self.n.dual);
        let nan = Vec3::xyz(f64::NAN, f64::NAN, f64::NAN);
        push(self.b.map_or(nan, |b| b.real));
        push(self.b.map_or(nan, |b| b.dual));
        let (tr, td) = self.tau.unwrap_or((f64::NAN, f64::NAN));
        for v in [self.kappa.0, self.kappa.1, tr, td] {
            f.push(fmt_num(v));
        }
        f.extend(self.residuals.iter().map(|&x| fmt_num(x)));
        f
    }
}

/// Closed grid `s₀ + (s₁ − s₀)i/(n − 1)`.
pub fn sample_points(domain: (f64, f64), n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                domain.1
            } else {
                domain.0 + (domain.1 - domain.0) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

pub fn sample_row(curve: &DualCurve, s: f64) -> CliResult<Row> {
    let (alpha, beta) = curve.position(s)?;
    let f = frenet_auto(curve, s)?;
    let r = residuals_of(&moving_frame(curve, s)?);
    Ok(Row {
        s,
        alpha,
        beta,
        t: f.t,
        n: f.n,
        b: f.b,
        kappa: (f.kappa.re, f.kappa.du),
        tau: f.tau.map(|t| (t.re, t.du)),
        residuals: [r.tangent, r.normal, r.binormal],
    })
}

pub fn sample(curve: &DualCurve, n: usize) -> CliResult<Vec<Row>> {
    sample_points(curve.domain(), n)
        .into_iter()
        .map(|s| sample_row(curve, s))
        .collect()
}

pub fn write_rows(out: impl Write, rows: &[Row]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header())?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Positions of both parts, as read back for plotting.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Track {
    pub alpha: Vec<Vec3>,
    pub beta: Vec<Vec3>,
}

impl Track {
    pub fn is_planar(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|p| p[2] == 0.0)
    }
}

/// Read `alpha_*` and `beta_*` columns from any table with a header row.
pub fn read_track(input: impl Read) -> CliResult<Track> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let headers = r.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::input(format!("missing column `{name}`")))
    };
    let mut idx = [[0usize; 3]; 2];
    for (k, part) in ["alpha", "beta"].iter().enumerate() {
        for (a, axis) in AXES.iter().enumerate() {
            idx[k][a] = col(&format!("{part}_{axis}"))?;
        }
    }
    let mut track = Track::default();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let get = |i: usize| -> CliResult<f64> {
            let field = rec.get(i).unwrap_or("");
            field
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::input(format!(
                        "row {}: `{field}` is not a finite number",
                        line + 2
                    ))
                })
        };
        let point = |k: usize| -> CliResult<Vec3> {
            Ok(Vec3::xyz(get(idx[k][0])?, get(idx[k][1])?, get(idx[k][2])?))
        };
        track.alpha.push(point(0)?);
        track.beta.push(point(1)?);
    }
    if track.alpha.len() < 2 {
        return Err(CliError::input("sample table needs at least two rows"));
    }
    Ok(track)
}
