//! Static SVG drawings of polygon decompositions. Each face becomes a
//! regular polygon with its corners tagged by vertex; gluing equal tags
//! and equal sides rebuilds the surface.

use std::fmt::Write;

use crate::extension::{polygon_decomposition, Polygon};
use crate::map::RotationMap;

const CELL: f64 = 180.0;
const COLUMNS: usize = 3;
const PALETTE: [&str; 6] = ["#dbe9f6", "#fde2c8", "#d9f0d3", "#f3d9ec", "#fff3bf", "#e0e0f0"];

fn fmt(x: f64) -> String {
    // fixed precision keeps the bytes stable across platforms
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('\'', "&#39;")
}

fn corners(n: usize, cx: f64, cy: f64, r: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * i as f64 / n as f64;
            (cx + r * t.cos(), cy + r * t.sin())
        })
        .collect()
}

/// Draw `polygons` in a grid, left to right.
pub fn polygons_svg(polygons: &[Polygon], title: &str) -> String {
    let rows = polygons.len().div_ceil(COLUMNS).max(1);
    let cols = polygons.len().clamp(1, COLUMNS);
    let (w, h) = (cols as f64 * CELL, rows as f64 * CELL + 30.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif">"#,
        fmt(w),
        fmt(h),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(out, r#"<text x="8" y="20" font-size="14">{}</text>"#, escape(title));
    for (i, p) in polygons.iter().enumerate() {
        let cx = (i % COLUMNS) as f64 * CELL + CELL / 2.0;
        let cy = (i / COLUMNS) as f64 * CELL + CELL / 2.0 + 30.0;
        let r = CELL * 0.34;
        let pts = corners(p.sides(), cx, cy, r);
        let path: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y))).collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="{}" stroke="#333" stroke-width="1.5"/>"##,
            path.join(" "),
            PALETTE[i % PALETTE.len()]
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-size="11" text-anchor="middle" fill="#666">{}-gon</text>"##,
            fmt(cx),
            fmt(cy + 4.0),
            p.sides()
        );
        for ((x, y), label) in corners(p.sides(), cx, cy, r + 14.0).iter().zip(&p.labels) {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="12" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                fmt(*x),
                fmt(*y),
                escape(label)
            );
        }
        for (x, y) in &pts {
            let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="2.5" fill="#333"/>"##, fmt(*x), fmt(*y));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Polygon decomposition of a map, drawn.
pub fn map_svg(m: &RotationMap, title: &str) -> String {
    polygons_svg(&polygon_decomposition(m), title)
}
