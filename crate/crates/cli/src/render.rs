//! SVG pictures of a fundamental domain and closed geodesics, drawn in the
//! Poincaré disk centred at the domain's centre.

use std::fmt::Write;

use pants_core::geodesy::SurfaceGeometry;
use pants_core::hyp::{GeoSegment, HPoint};
use pants_core::surface::CurveClass;

use crate::error::Result;

const SIZE: f64 = 800.0;
const RADIUS: f64 = 340.0;
const LEGEND: f64 = 220.0;
const STEPS: usize = 48;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

pub fn color(k: usize) -> String {
    match PALETTE.get(k) {
        Some(c) => (*c).to_string(),
        None => format!("hsl({}, 70%, 40%)", (k * 137) % 360),
    }
}

struct Frame {
    center: HPoint,
}

impl Frame {
    fn map(&self, z: HPoint) -> (f64, f64) {
        let c = self.center;
        let w = HPoint {
            x: (z.x - c.x) / c.y,
            y: z.y / c.y,
        }
        .disk();
        (SIZE / 2.0 + RADIUS * w[0], SIZE / 2.0 - RADIUS * w[1])
    }

    /// Path data for the geodesic segment from `a` to `b`.
    fn segment(&self, a: HPoint, b: HPoint, out: &mut String) {
        let Ok(seg) = GeoSegment::new(a, b) else {
            return;
        };
        for k in 0..=STEPS {
            let (x, y) = self.map(seg.point_at(k as f64 / STEPS as f64));
            let op = if k == 0 { 'M' } else { 'L' };
            let _ = write!(out, "{op}{x:.3} {y:.3} ");
        }
    }
}

/// Renders the domain outline plus one path per curve, coloured by index,
/// with a legend of lengths.
pub fn render_svg(geo: &SurfaceGeometry, curves: &[CurveClass]) -> Result<String> {
    let frame = Frame {
        center: geo.domain_center(),
    };
    let width = SIZE + LEGEND;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{SIZE}" viewBox="0 0 {width} {SIZE}">"#
    );
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{width}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r##"<circle cx="{0}" cy="{0}" r="{RADIUS}" fill="none" stroke="#bbbbbb" stroke-width="1"/>"##,
        SIZE / 2.0
    );

    let verts = geo.domain_vertices();
    let mut outline = String::new();
    for (k, &a) in verts.iter().enumerate() {
        frame.segment(a, verts[(k + 1) % verts.len()], &mut outline);
    }
    let _ = writeln!(
        svg,
        r##"<path id="domain" d="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        outline.trim_end()
    );

    for (k, c) in curves.iter().enumerate() {
        let mut d = String::new();
        for (a, b) in geo.curve_chords(c)? {
            frame.segment(a, b, &mut d);
        }
        let _ = writeln!(
            svg,
            r#"<path id="curve{k}" d="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            d.trim_end(),
            color(k)
        );
    }

    let x = SIZE + 10.0;
    for (k, c) in curves.iter().enumerate() {
        let y = 30.0 + 22.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{0}" x2="{1}" y2="{0}" stroke="{2}" stroke-width="3"/>"#,
            y - 5.0,
            x + 24.0,
            color(k)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{y}" font-family="sans-serif" font-size="14">curve {k}: length {:.6}</text>"#,
            x + 32.0,
            c.length
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
