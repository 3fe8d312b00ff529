//! ASCII and SVG renderings of a Newton polygon. Horizontal axis is the
//! t-exponent `a`, vertical axis the s-exponent `b`.

use std::fmt::Write;

use super::NewtonPolygon;
use crate::scalar::format_rational;

fn extent(poly: &NewtonPolygon) -> (u32, u32) {
    let a = poly.support.iter().map(|p| p.0).max().unwrap_or(0);
    let b = poly.support.iter().map(|p| p.1).max().unwrap_or(0);
    (a, b)
}

/// Lattice plot: `o` support point, `#` lower-hull vertex, `*` other support
/// point on a lower segment, `.` empty lattice point.
pub fn ascii(poly: &NewtonPolygon) -> String {
    let (amax, bmax) = extent(poly);
    let on_lower = |pt: (u32, u32)| poly.lower_segments.iter().any(|s| s.points.contains(&pt));
    let vertex = |pt: (u32, u32)| {
        poly.lower_segments.iter().any(|s| s.left == pt || s.right == pt)
            || (poly.lower_segments.is_empty() && poly.support.first() == Some(&pt))
    };
    let width = bmax.to_string().len();
    let mut out = String::new();
    for b in (0..=bmax).rev() {
        let _ = write!(out, "{b:>width$} |");
        for a in 0..=amax {
            let pt = (a, b);
            let ch = if !poly.support.contains(&pt) {
                '.'
            } else if vertex(pt) {
                '#'
            } else if on_lower(pt) {
                '*'
            } else {
                'o'
            };
            let _ = write!(out, " {ch}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{:>width$} +{}", "", "--".repeat(amax as usize + 1));
    let _ = write!(out, "{:>width$}  ", "");
    for a in 0..=amax {
        let _ = write!(out, " {}", a % 10);
    }
    out.push_str("   (t)\n");
    for (i, s) in poly.lower_segments.iter().enumerate() {
        let _ = writeln!(
            out,
            "segment {i}: ({},{})-({},{}) slope {} width {}",
            s.left.0,
            s.left.1,
            s.right.0,
            s.right.1,
            format_rational(&s.slope),
            s.lattice_width
        );
    }
    out
}

/// Standalone SVG document.
pub fn svg(poly: &NewtonPolygon) -> String {
    const CELL: f64 = 60.0;
    const MARGIN: f64 = 50.0;
    let (amax, bmax) = extent(poly);
    let w = MARGIN * 2.0 + CELL * amax.max(1) as f64;
    let h = MARGIN * 2.0 + CELL * bmax.max(1) as f64;
    let x = |a: u32| MARGIN + CELL * a as f64;
    let y = |b: u32| h - MARGIN - CELL * b as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"  <g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(out, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(0), y(0), w - MARGIN / 2.0, y(0));
    let _ = writeln!(out, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(0), y(0), x(0), MARGIN / 2.0);
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="14">t</text>"#, w - MARGIN / 2.0, y(0) + 18.0);
    let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="14">s</text>"#, x(0) - 18.0, MARGIN / 2.0);
    for a in 0..=amax {
        let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="11" text-anchor="middle">{a}</text>"#, x(a), y(0) + 16.0);
    }
    for b in 0..=bmax {
        let _ = writeln!(out, r#"  <text x="{}" y="{}" font-size="11" text-anchor="end">{b}</text>"#, x(0) - 8.0, y(b) + 4.0);
    }
    if poly.hull.len() > 2 {
        let pts: Vec<String> = poly.hull.iter().map(|&(a, b)| format!("{},{}", x(a), y(b))).collect();
        let _ = writeln!(out, r##"  <polygon class="hull" points="{}" fill="#dde8f5" stroke="#7a9cc6"/>"##, pts.join(" "));
    }
    for s in &poly.lower_segments {
        let _ = writeln!(
            out,
            r##"  <line class="lower-segment" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="3"/>"##,
            x(s.left.0),
            y(s.left.1),
            x(s.right.0),
            y(s.right.1)
        );
        let mx = (x(s.left.0) + x(s.right.0)) / 2.0;
        let my = (y(s.left.1) + y(s.right.1)) / 2.0 + 18.0;
        let _ = writeln!(
            out,
            r##"  <text class="slope-label" x="{mx}" y="{my}" font-size="12" fill="#c0392b">slope {}</text>"##,
            format_rational(&s.slope)
        );
    }
    for &(a, b) in &poly.support {
        let _ = writeln!(out, r#"  <circle class="support" cx="{}" cy="{}" r="4" fill="black"/>"#, x(a), y(b));
    }
    out.push_str("</svg>\n");
    out
}
