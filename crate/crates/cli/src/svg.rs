//! Standalone SVG rendering of sampled traces.

use std::fmt::Write;

use sle_core::loewner::{Geometry, Trace};
use sle_core::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct SvgStyle {
    /// Pixel width; the height follows the aspect ratio of the data.
    pub width: f64,
    pub stroke: String,
    pub stroke_width: f64,
    pub boundary_stroke: String,
    pub marker_fill: String,
    /// Relative padding around the drawn region.
    pub margin: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            width: 600.0,
            stroke: "#1f4e9c".into(),
            stroke_width: 1.5,
            boundary_stroke: "#444444".into(),
            marker_fill: "#c0392b".into(),
            margin: 0.1,
        }
    }
}

fn marked_points(geometry: Geometry) -> Vec<C64> {
    match geometry {
        Geometry::Chordal => vec![C64::new(0.0, 0.0)],
        Geometry::Dipolar => vec![C64::new(-1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        Geometry::Radial | Geometry::Annular { .. } => vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
    }
}

/// Render `trace` as a polyline over the domain boundary (the real axis, or
/// the unit circle and, for annuli, the inner circle `e^{-p}`) with the
/// geometry's marked points. Coordinates are in data units with `y` up.
pub fn render_trace_svg(trace: &Trace, style: &SvgStyle) -> String {
    assert!(!trace.points.is_empty(), "empty trace");
    let marks = marked_points(trace.geometry);
    let disk = matches!(trace.geometry, Geometry::Radial | Geometry::Annular { .. });
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let mut grow = |z: C64| {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    };
    // the marked points already put the real axis in view
    trace.points.iter().chain(&marks).for_each(|&z| grow(z));
    if disk {
        grow(C64::new(-1.0, -1.0));
        grow(C64::new(1.0, 1.0));
    }
    // keep thin traces from producing extreme aspect ratios
    let (w, h) = (x1 - x0, y1 - y0);
    if w < 0.5 * h {
        let c = 0.5 * (x0 + x1);
        x0 = c - 0.25 * h;
        x1 = c + 0.25 * h;
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = style.margin * span;
    let (vx, vy) = (x0 - pad, -(y1 + pad));
    let (vw, vh) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let height = style.width * vh / vw;
    let r_mark = 0.01 * span;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="{} {} {} {}">"#,
        style.width,
        height,
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let line = format!(
        r#"fill="none" stroke="{}" stroke-width="1" vector-effect="non-scaling-stroke""#,
        style.boundary_stroke
    );
    if disk {
        let _ = writeln!(s, r#"<circle class="boundary" cx="0" cy="0" r="1" {line}/>"#);
        if let Geometry::Annular { p, .. } = trace.geometry {
            let _ = writeln!(s, r#"<circle class="boundary" cx="0" cy="0" r="{}" {line}/>"#, num((-p).exp()));
        }
    } else {
        let _ = writeln!(
            s,
            r#"<line class="boundary" x1="{}" y1="0" x2="{}" y2="0" {line}/>"#,
            num(vx),
            num(vx + vw)
        );
    }
    let pts: Vec<String> = trace.points.iter().map(|z| format!("{},{}", num(z.re), num(-z.im))).collect();
    let _ = writeln!(
        s,
        r#"<polyline class="trace" points="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linejoin="round" vector-effect="non-scaling-stroke"/>"#,
        pts.join(" "),
        style.stroke,
        style.stroke_width
    );
    for z in &marks {
        let _ = writeln!(
            s,
            r#"<circle class="marked" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            num(z.re),
            num(-z.im),
            num(r_mark),
            style.marker_fill
        );
    }
    s.push_str("</svg>\n");
    s
}

fn num(v: f64) -> String {
    let r = format!("{v:.6}");
    if r == "-0.000000" {
        "0.000000".into()
    } else {
        r
    }
}

/// The `(x, y)` vertices of the trace polyline in an SVG produced by
/// [`render_trace_svg`], in data coordinates.
pub fn polyline_points(svg: &str) -> Vec<(f64, f64)> {
    let Some(start) = svg.find(r#"class="trace" points=""#) else {
        return Vec::new();
    };
    let rest = &svg[start + r#"class="trace" points=""#.len()..];
    let body = &rest[..rest.find('"').unwrap_or(0)];
    body.split_whitespace()
        .filter_map(|p| {
            let (x, y) = p.split_once(',')?;
            Some((x.parse().ok()?, -y.parse::<f64>().ok()?))
        })
        .collect()
}
