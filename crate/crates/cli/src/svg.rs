// SPDX-License-Identifier: Apache-2.0

//! Static SVG projections of the real and dual parts. Planar data gets one
//! xy panel; spatial data gets all three coordinate planes side by side.

use std::fmt::Write;

use dualcurve_core::Vec3;

use crate::table::Track;

const PANEL: f64 = 360.0;
const MARGIN: f64 = 36.0;
const LEGEND: f64 = 28.0;
// axis indices and axis names of one projection
type Projection = ((usize, usize), (&'static str, &'static str));

const ALPHA_COLOR: &str = "#1f5fbf";
const BETA_COLOR: &str = "#c0392b";

fn bounds(points: impl Iterator<Item = (f64, f64)>) -> (f64, f64, f64, f64) {
    let mut b = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for (x, y) in points {
        b = (b.0.min(x), b.1.max(x), b.2.min(y), b.3.max(y));
    }
    // degenerate extents still get a visible box
    let pad = |lo: f64, hi: f64| {
        if hi - lo < 1e-12 {
            (lo - 1.0, hi + 1.0)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = pad(b.0, b.1);
    let (y0, y1) = pad(b.2, b.3);
    (x0, x1, y0, y1)
}

fn panel(svg: &mut String, track: &Track, axes: (usize, usize), names: (&str, &str), left: f64) {
    let proj = |p: &Vec3| (p[axes.0], p[axes.1]);
    let (x0, x1, y0, y1) = bounds(track.alpha.iter().chain(&track.beta).map(proj));
    // equal scale on both axes, centred in the panel
    let inner = PANEL - 2.0 * MARGIN;
    let scale = inner / (x1 - x0).max(y1 - y0);
    let ox = left + MARGIN + (inner - scale * (x1 - x0)) / 2.0;
    let oy = LEGEND + MARGIN + (inner + scale * (y1 - y0)) / 2.0;
    let map = |(x, y): (f64, f64)| (ox + scale * (x - x0), oy - scale * (y - y0));

    let top = LEGEND;
    let _ = writeln!(
        svg,
        r##"<rect x="{left:.2}" y="{top:.2}" width="{PANEL:.2}" height="{PANEL:.2}" fill="none" stroke="#999"/>"##
    );
    if x0 <= 0.0 && x1 >= 0.0 {
        let (ax, _) = map((0.0, y0));
        let _ = writeln!(
            svg,
            r##"<line x1="{ax:.2}" y1="{:.2}" x2="{ax:.2}" y2="{:.2}" stroke="#ccc"/>"##,
            top + MARGIN / 2.0,
            top + PANEL - MARGIN / 2.0
        );
    }
    if y0 <= 0.0 && y1 >= 0.0 {
        let (_, ay) = map((x0, 0.0));
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{ay:.2}" x2="{:.2}" y2="{ay:.2}" stroke="#ccc"/>"##,
            left + MARGIN / 2.0,
            left + PANEL - MARGIN / 2.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}{}</text>"#,
        left + PANEL / 2.0,
        top + PANEL - 8.0,
        names.0,
        names.1
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="10">{}: [{:.3}, {:.3}]  {}: [{:.3}, {:.3}]</text>"#,
        left + 6.0,
        top + 14.0,
        names.0,
        x0,
        x1,
        names.1,
        y0,
        y1
    );
    for (points, color) in [(&track.alpha, ALPHA_COLOR), (&track.beta, BETA_COLOR)] {
        let _ = write!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points=""#
        );
        for (i, p) in points.iter().enumerate() {
            let (x, y) = map(proj(p));
            let sep = if i == 0 { "" } else { " " };
            let _ = write!(svg, "{sep}{x:.2},{y:.2}");
        }
        let _ = writeln!(svg, r#""/>"#);
    }
}

pub fn render(track: &Track) -> String {
    let panels: &[Projection] = if track.is_planar() {
        &[((0, 1), ("x", "y"))]
    } else {
        &[
            ((0, 1), ("x", "y")),
            ((0, 2), ("x", "z")),
            ((1, 2), ("y", "z")),
        ]
    };
    let width = PANEL * panels.len() as f64;
    let height = PANEL + LEGEND;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (k, (axes, names)) in panels.iter().enumerate() {
        panel(&mut svg, track, *axes, *names, k as f64 * PANEL);
    }
    for (i, (label, color)) in [
        ("alpha (real part)", ALPHA_COLOR),
        ("beta (dual part)", BETA_COLOR),
    ]
    .iter()
    .enumerate()
    {
        let x = 10.0 + 170.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.0}" y1="14" x2="{:.0}" y2="14" stroke="{color}" stroke-width="3"/><text x="{:.0}" y="18" font-size="12">{label}</text>"#,
            x + 24.0,
            x + 30.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
