// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::{BufWriter, Write};

use dualcurve_core::closed_forms::{
    circle_dual_torsion, circular_helix, helix_planar_dual, max_torsion_determinant,
    planar_constant, spatial_constant, tangent_lift, PlanarConstantParams, SpatialConstantParams,
};
use dualcurve_core::curve::{Dim, DualCurve, ReparamOptions, DEFAULT_GRID};
use dualcurve_core::expr::Bindings;
use dualcurve_core::frenet::{frenet_auto, frenet_normalized, frenet_residuals, frenet_via_alpha};
use dualcurve_core::numerics::IntegratorConfig;
use dualcurve_core::solver::{
    jet_consistency, solve_planar, solve_spatial, verify_prescription, PlanarConstants,
    Prescription, PrescriptionReport, SpatialConstants,
};
use dualcurve_core::{Vec2, Vec3};

use crate::config::Settings;
use crate::error::{exit, CliError, CliResult};
use crate::svg;
use crate::table::{self, read_track, Track};

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-6;
const VERIFY_GRID: usize = 201;

/// A curve ready for sampling, with what is known about it.
pub struct Built {
    pub curve: DualCurve,
    pub label: String,
    /// Curvature and torsion the curve should have, when known.
    pub prescription: Option<Prescription>,
    /// Extra closed-form check: planarity of the dual part.
    pub check_planar_beta: bool,
}

fn domain(settings: &Settings, default: (f64, f64)) -> CliResult<(f64, f64)> {
    let d = (
        settings.s0.unwrap_or(default.0),
        settings.s1.unwrap_or(default.1),
    );
    if !(d.0 < d.1) {
        return Err(CliError::input(format!(
            "domain [{}, {}] needs s0 < s1",
            d.0, d.1
        )));
    }
    Ok(d)
}

fn param(settings: &Settings, name: &str, default: f64) -> f64 {
    settings.param(name).unwrap_or(default)
}

fn bindings(settings: &Settings) -> Bindings {
    settings.params.clone().into_iter().collect()
}

fn builtin(settings: &Settings, name: &str) -> CliResult<Built> {
    let tau = 2.0 * std::f64::consts::PI;
    let b = Bindings::new();
    let (curve, label) = match name {
        "circle-line" => {
            let d = domain(settings, (0.0, tau))?;
            (
                DualCurve::parse(&["cos(s)", "sin(s)", "0"], &["0", "0", "s"], d, &b)?,
                "circle-line".to_string(),
            )
        }
        "helix-lift" => {
            let (r, h) = (param(settings, "r", 3.0), param(settings, "h", 4.0));
            let d = domain(settings, (0.0, 10.0))?;
            (
                tangent_lift(&circular_helix(r, h)?, d)?,
                format!("helix-lift r={r} h={h}"),
            )
        }
        "cos-squared" => {
            let d = domain(settings, (0.5, 2.5))?;
            let c = DualCurve::parse(&["cos(s^2)", "sin(s^2)", "0"], &["0", "0", "cos(s)"], d, &b)?;
            // arc length from t = 0 is t², so the reparametrized curve is (cos s, sin s, 0) + ε(0, 0, cos √s)
            let opts = ReparamOptions {
                s_start: settings.s_start.unwrap_or(d.0 * d.0),
                ..Default::default()
            };
            (
                c.arclength_reparametrize_with(&opts)?,
                "cos-squared (reparametrized)".to_string(),
            )
        }
        other => {
            return Err(CliError::input(format!(
                "unknown builtin `{other}` (expected circle-line, helix-lift, cos-squared)"
            )))
        }
    };
    Ok(Built {
        curve,
        label,
        prescription: None,
        check_planar_beta: false,
    })
}

fn spatial_params(settings: &Settings) -> SpatialConstantParams {
    // (r, h) is an alternative to (k1, tau1)
    let (k1, tau1) = match (settings.param("r"), settings.param("h")) {
        (Some(r), h) => {
            let h = h.unwrap_or(0.0);
            let m2 = r * r + h * h;
            (r / m2, h / m2)
        }
        _ => (param(settings, "k1", 1.0), param(settings, "tau1", 0.0)),
    };
    SpatialConstantParams {
        k1,
        tau1,
        k2: param(settings, "k2", 0.0),
        tau2: param(settings, "tau2", 0.0),
        c1: param(settings, "c1", 0.0),
        c2: param(settings, "c2", 0.0),
        c3: param(settings, "c3", 0.0),
    }
}

fn family(settings: &Settings, name: &str) -> CliResult<Built> {
    let constant = |k1: f64, k2: f64, t1: f64, t2: f64, d| -> CliResult<Option<Prescription>> {
        let p = SpatialConstantParams {
            k1,
            k2,
            tau1: t1,
            tau2: t2,
            ..Default::default()
        };
        Ok(Some(p.prescription(d)?))
    };
    let built = match name {
        "planar-constant" => {
            let p = PlanarConstantParams {
                r: param(settings, "r", 1.0),
                a: param(settings, "a", 0.0),
                b: param(settings, "b", 0.0),
            };
            let d = domain(settings, (0.0, 10.0))?;
            let k = Prescription::planar(
                dualcurve_core::expr::Expr::num(1.0 / p.r),
                dualcurve_core::expr::Expr::num(p.a),
                d,
            )?;
            Built {
                curve: planar_constant(&p, d)?,
                label: format!("planar-constant r={} a={} b={}", p.r, p.a, p.b),
                prescription: Some(k),
                check_planar_beta: false,
            }
        }
        "spatial-constant" => {
            let p = spatial_params(settings);
            let d = domain(settings, (0.0, 10.0))?;
            Built {
                curve: spatial_constant(&p, d)?,
                label: format!("spatial-constant k1={} tau1={} k2={} tau2={}", p.k1, p.tau1, p.k2, p.tau2),
                prescription: Some(p.prescription(d)?),
                check_planar_beta: false,
            }
        }
        "circle-dual-torsion" => {
            let r = param(settings, "r", 1.0);
            let t2 = param(settings, "tau2", 0.0);
            let c = ["c1", "c2", "c3"].map(|n| param(settings, n, 0.0));
            let d = domain(settings, (0.0, 10.0))?;
            Built {
                curve: circle_dual_torsion(r, t2, c, d)?,
                label: format!("circle-dual-torsion r={r} tau2={t2}"),
                prescription: constant(1.0 / r, 0.0, 0.0, t2, d)?,
                check_planar_beta: false,
            }
        }
        "helix-planar-dual" => {
            let p = spatial_params(settings);
            let d = domain(settings, (0.0, 10.0))?;
            Built {
                curve: helix_planar_dual(p.k1, p.tau1, [p.c1, p.c2, p.c3], d)?,
                label: format!("helix-planar-dual k1={} tau1={}", p.k1, p.tau1),
                prescription: constant(p.k1, 0.0, p.tau1, 0.0, d)?,
                check_planar_beta: true,
            }
        }
        "tangent-lift" => {
            let mut b = builtin(settings, "helix-lift")?;
            b.label = b.label.replacen("helix-lift", "tangent-lift", 1);
            b
        }
        other => {
            return Err(CliError::input(format!(
                "unknown family `{other}` (expected planar-constant, spatial-constant, circle-dual-torsion, helix-planar-dual, tangent-lift)"
            )))
        }
    };
    Ok(built)
}

fn expressions(settings: &Settings) -> CliResult<Option<Built>> {
    let (Some(alpha), Some(beta)) = (&settings.alpha, &settings.beta) else {
        return Ok(None);
    };
    let a: Vec<&str> = alpha.iter().map(String::as_str).collect();
    let b: Vec<&str> = beta.iter().map(String::as_str).collect();
    if a.len() != b.len() || !(2..=3).contains(&a.len()) {
        return Err(CliError::input(
            "alpha and beta need the same number of components (2 or 3)",
        ));
    }
    let d = domain(settings, (0.0, 1.0))?;
    let curve = DualCurve::parse(&a, &b, d, &bindings(settings))?;
    Ok(Some(Built {
        curve,
        label: "expression curve".into(),
        prescription: None,
        check_planar_beta: false,
    }))
}

/// Resolve the curve source: builtin, then family, then expressions.
pub fn build_curve(settings: &Settings) -> CliResult<Built> {
    let mut built = if let Some(name) = &settings.builtin {
        builtin(settings, name)?
    } else if let Some(name) = &settings.family {
        family(settings, name)?
    } else if let Some(b) = expressions(settings)? {
        b
    } else {
        return Err(CliError::input(
            "no curve given: use --builtin, --family, or --alpha with --beta",
        ));
    };
    let report = built
        .curve
        .check_admissible(DEFAULT_GRID, built.curve.default_tol())?;
    if let Some(why) = report.failure() {
        return Err(dualcurve_core::Error::NotAdmissible(why).into());
    }
    if settings.reparametrize == Some(true) {
        let opts = ReparamOptions {
            s_start: settings.s_start.unwrap_or(0.0),
            ..Default::default()
        };
        built.curve = built.curve.arclength_reparametrize_with(&opts)?;
        // the prescription is in the old parameter
        built.prescription = None;
        built.label.push_str(" (reparametrized)");
    } else {
        let speed = built.curve.is_unit_speed(DEFAULT_GRID, 1e-6)?;
        if !speed.ok {
            return Err(CliError::input(format!(
                "curve is admissible but not unit speed (max ||alpha'|^2 - 1| = {:.3e}); pass --reparametrize",
                speed.max_speed_error
            )));
        }
    }
    Ok(built)
}

fn integrator(settings: &Settings) -> CliResult<IntegratorConfig> {
    let cfg = match settings.method.as_deref().unwrap_or("rk4") {
        "rk4" => IntegratorConfig::rk4(settings.step.unwrap_or(1e-3)),
        "rk45" => IntegratorConfig::rk45(
            settings.rtol.unwrap_or(1e-10),
            settings.atol.unwrap_or(1e-12),
        ),
        other => {
            return Err(CliError::input(format!(
                "unknown method `{other}` (expected rk4 or rk45)"
            )))
        }
    };
    Ok(cfg)
}

fn vec_n<const N: usize>(name: &str, v: &Option<Vec<f64>>) -> CliResult<Option<[f64; N]>> {
    match v {
        None => Ok(None),
        Some(v) if v.len() == N => Ok(Some(std::array::from_fn(|i| v[i]))),
        Some(v) => Err(CliError::input(format!(
            "{name} needs {N} components, got {}",
            v.len()
        ))),
    }
}

fn prescription(settings: &Settings) -> CliResult<Prescription> {
    let dim = settings.dim.unwrap_or(3);
    let get = |e: &Option<String>| e.clone().unwrap_or_else(|| "0".into());
    let k1 = settings
        .k1
        .clone()
        .ok_or_else(|| CliError::input("solve needs --k1"))?;
    let d = domain(settings, (0.0, 2.0 * std::f64::consts::PI))?;
    let b = bindings(settings);
    let p = match dim {
        2 => {
            if settings.tau1.is_some() || settings.tau2.is_some() {
                return Err(CliError::input("planar prescriptions have no torsion"));
            }
            Prescription::parse(&[&k1, &get(&settings.k2)], d, &b)?
        }
        3 => Prescription::parse(
            &[
                &k1,
                &get(&settings.k2),
                &get(&settings.tau1),
                &get(&settings.tau2),
            ],
            d,
            &b,
        )?,
        n => return Err(CliError::input(format!("--dim must be 2 or 3, got {n}"))),
    };
    Ok(p)
}

pub fn solve(settings: &Settings) -> CliResult<(DualCurve, Prescription)> {
    let p = prescription(settings)?;
    let cfg = integrator(settings)?;
    let curve = match p.dim() {
        Dim::Two => {
            let c = PlanarConstants {
                alpha0: vec_n::<2>("alpha0", &settings.alpha0)?
                    .map(Vec2::new)
                    .unwrap_or_default(),
                theta0: settings.theta0.unwrap_or(0.0),
                lambda0: settings.lambda0.unwrap_or(0.0),
                beta0: vec_n::<2>("beta0", &settings.beta0)?
                    .map(Vec2::new)
                    .unwrap_or_default(),
            };
            solve_planar(&p, &c, &cfg)?.into_curve()
        }
        Dim::Three => {
            let mut c = SpatialConstants {
                x0: settings.x0.unwrap_or(0.0),
                y0: settings.y0.unwrap_or(0.0),
                dy0: settings.dy0.unwrap_or(0.0),
                ..Default::default()
            };
            if let Some(a) = vec_n::<3>("alpha0", &settings.alpha0)? {
                c.alpha0 = Vec3::new(a);
            }
            if let Some(b) = vec_n::<3>("beta0", &settings.beta0)? {
                c.beta0 = Vec3::new(b);
            }
            if let Some(f) = &settings.frame {
                if f.len() != 3 {
                    return Err(CliError::input("frame needs three vectors T;N;B"));
                }
                for (k, v) in f.iter().enumerate() {
                    c.frame[k] = Vec3::new(
                        vec_n::<3>("frame vector", &Some(v.clone()))?.unwrap_or_default(),
                    );
                }
            }
            solve_spatial(&p, &c, &cfg)?.into_curve()
        }
    };
    Ok((curve, p))
}

fn open_out(settings: &Settings) -> CliResult<Box<dyn Write>> {
    Ok(match &settings.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError::input(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_samples(settings: &Settings, curve: &DualCurve) -> CliResult<Vec<table::Row>> {
    let rows = table::sample(curve, settings.samples.unwrap_or(DEFAULT_SAMPLES))?;
    let mut out = open_out(settings)?;
    table::write_rows(&mut out, &rows)?;
    out.flush()?;
    Ok(rows)
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

fn summarize_rows(log: &mut dyn Write, rows: &[table::Row]) -> CliResult<()> {
    let kr = range(rows.iter().map(|r| r.kappa.0));
    let kd = range(rows.iter().map(|r| r.kappa.1));
    writeln!(log, "samples: {}", rows.len())?;
    writeln!(
        log,
        "kappa_re in [{:.12}, {:.12}], kappa_du in [{:.12}, {:.12}]",
        kr.0, kr.1, kd.0, kd.1
    )?;
    if rows.iter().all(|r| r.tau.is_some()) {
        let tr = range(rows.iter().filter_map(|r| r.tau).map(|t| t.0));
        let td = range(rows.iter().filter_map(|r| r.tau).map(|t| t.1));
        writeln!(
            log,
            "tau_re in [{:.12}, {:.12}], tau_du in [{:.12}, {:.12}]",
            tr.0, tr.1, td.0, td.1
        )?;
    }
    let res = rows.iter().flat_map(|r| r.residuals).fold(0.0, f64::max);
    writeln!(log, "max Frenet residual: {res:.3e}")?;
    Ok(())
}

fn report_prescription(log: &mut dyn Write, r: &PrescriptionReport) -> CliResult<()> {
    writeln!(
        log,
        "prescription residuals: k1 {:.3e}, k2 {:.3e}, tau1 {:.3e}, tau2 {:.3e} (tol {:.1e}) -> {}",
        r.k1,
        r.k2,
        r.tau1,
        r.tau2,
        r.tol,
        if r.pass() { "pass" } else { "FAIL" }
    )?;
    if r.failed {
        writeln!(log, "  Frenet evaluation failed near s={}", r.worst_s)?;
    }
    Ok(())
}

pub fn cmd_frenet(settings: &Settings, log: &mut dyn Write) -> CliResult<()> {
    let built = build_curve(settings)?;
    writeln!(log, "curve: {}", built.label)?;
    let rows = write_samples(settings, &built.curve)?;
    summarize_rows(log, &rows)
}

pub fn cmd_solve(settings: &Settings, log: &mut dyn Write) -> CliResult<()> {
    let (curve, p) = solve(settings)?;
    let rows = write_samples(settings, &curve)?;
    summarize_rows(log, &rows)?;
    let tol = settings.tol.unwrap_or(DEFAULT_TOL);
    let r = verify_prescription(&curve, &p, VERIFY_GRID, tol);
    report_prescription(log, &r)?;
    // the prescription check reads derivatives built from the prescription
    // itself; this one sees integration error in the positions and frame
    let drift = jet_consistency(&curve, VERIFY_GRID)?;
    writeln!(
        log,
        "integration consistency: {drift:.3e} -> {}",
        if drift < tol { "pass" } else { "FAIL" }
    )?;
    if !r.pass() || !(drift < tol) {
        return Err(CliError::numerical(
            "synthesized curve does not reproduce the prescription",
        ));
    }
    Ok(())
}

pub fn cmd_closed_form(settings: &Settings, log: &mut dyn Write) -> CliResult<()> {
    let name = settings
        .family
        .as_deref()
        .ok_or_else(|| CliError::input("closed-form needs --family"))?;
    let built = family(settings, name)?;
    writeln!(log, "curve: {}", built.label)?;
    let rows = write_samples(settings, &built.curve)?;
    summarize_rows(log, &rows)?;
    let tol = settings.tol.unwrap_or(DEFAULT_TOL);
    let mut ok = true;
    if let Some(p) = &built.prescription {
        let r = verify_prescription(&built.curve, p, VERIFY_GRID, tol);
        report_prescription(log, &r)?;
        ok &= r.pass();
    }
    if built.check_planar_beta {
        let det = max_torsion_determinant(&built.curve.beta, built.curve.domain(), VERIFY_GRID)?;
        let planar = det < 1e-10;
        writeln!(
            log,
            "planarity of beta: max |det(b', b'', b''')| = {det:.3e} -> {}",
            if planar { "pass" } else { "FAIL" }
        )?;
        ok &= planar;
    }
    if !ok {
        return Err(CliError::numerical(
            "closed form failed its round-trip check",
        ));
    }
    Ok(())
}

/// Every check that applies to the curve. Fails with exit code 4 if any check fails.
pub fn cmd_verify(settings: &Settings, log: &mut dyn Write) -> CliResult<()> {
    let built = build_curve(settings)?;
    let c = &built.curve;
    let tol = settings.tol.unwrap_or(DEFAULT_TOL);
    writeln!(log, "curve: {}", built.label)?;
    let adm = c.check_admissible(DEFAULT_GRID, c.default_tol())?;
    writeln!(
        log,
        "admissible: min |alpha'| = {:.6}, max |<alpha', beta'>| = {:.3e}",
        adm.min_speed, adm.max_inner
    )?;
    let speed = c.is_unit_speed(DEFAULT_GRID, c.default_tol())?;
    writeln!(
        log,
        "unit speed: {} (max error {:.3e})",
        speed.ok, speed.max_speed_error
    )?;
    let normalized = c.is_normalized(DEFAULT_GRID, c.default_tol())?;
    writeln!(log, "normalized: {}", normalized.ok)?;
    let (a, b) = c.domain();
    let mut residual: f64 = 0.0;
    let mut via_alpha: f64 = 0.0;
    let mut via_beta: f64 = 0.0;
    for s in dualcurve_core::curve::interior_grid(a, b, VERIFY_GRID) {
        residual = residual.max(frenet_residuals(c, s)?.max());
        let f = frenet_auto(c, s)?;
        if c.dim() == Dim::Three {
            via_alpha = via_alpha.max(frenet_via_alpha(c, s)?.max_difference(&f));
            if normalized.ok {
                via_beta = via_beta.max(frenet_normalized(c, s)?.max_difference(&f));
            }
        }
    }
    writeln!(log, "max Frenet residual: {residual:.3e}")?;
    let mut ok = adm.admissible() && speed.ok && residual < tol;
    if c.dim() == Dim::Three {
        writeln!(log, "direct vs alpha-decomposed: {via_alpha:.3e}")?;
        ok &= via_alpha < tol;
        if normalized.ok {
            writeln!(log, "direct vs normalized: {via_beta:.3e}")?;
            ok &= via_beta < tol;
        }
    }
    let p = match (&built.prescription, &settings.k1) {
        (_, Some(_)) => Some(prescription(&Settings {
            s0: Some(a),
            s1: Some(b),
            ..settings.clone()
        })?),
        (Some(p), None) => Some(p.clone()),
        (None, None) => None,
    };
    if let Some(p) = p {
        let r = verify_prescription(c, &p, VERIFY_GRID, tol);
        report_prescription(log, &r)?;
        ok &= r.pass();
    }
    writeln!(log, "result: {}", if ok { "pass" } else { "FAIL" })?;
    if !ok {
        return Err(CliError::numerical("verification failed"));
    }
    Ok(())
}

pub fn cmd_plot(settings: &Settings, log: &mut dyn Write) -> CliResult<()> {
    let track = match &settings.input {
        Some(path) => {
            let f = File::open(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            read_track(f).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
        }
        None => {
            let built = build_curve(settings)?;
            let mut t = Track::default();
            for s in table::sample_points(built.curve.domain(), settings.samples.unwrap_or(400)) {
                let (a, b) = built.curve.position(s)?;
                t.alpha.push(a);
                t.beta.push(b);
            }
            t
        }
    };
    let svg = svg::render(&track);
    let path = settings
        .out
        .clone()
        .unwrap_or_else(|| "dualcurve.svg".into());
    std::fs::write(&path, svg)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    writeln!(
        log,
        "wrote {} ({} panel{})",
        path.display(),
        if track.is_planar() { 1 } else { 3 },
        if track.is_planar() { "" } else { "s" }
    )?;
    Ok(())
}

pub fn exit_code(r: &CliResult<()>) -> i32 {
    match r {
        Ok(()) => exit::OK,
        Err(e) => e.code,
    }
}
