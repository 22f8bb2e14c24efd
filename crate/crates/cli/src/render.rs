//! SVG output: polygons filled by nesting depth, deeper polygons on top.

use std::fmt::Write as _;

use nestpoly_core::{interior_point, ForestDocument, Polygon};

const PALETTE: [&str; 6] = ["#dbe9f6", "#a9cce3", "#f9e79f", "#f5b7b1", "#abebc6", "#d7bde2"];
const MARGIN: f64 = 0.05;

fn color(depth: usize) -> &'static str {
    PALETTE[depth % PALETTE.len()]
}

/// Renders `polygons` using the depths in `forest`. Every polygon must appear
/// in the forest.
pub fn svg(polygons: &[Polygon], forest: &ForestDocument) -> Result<String, String> {
    let mut layers = Vec::with_capacity(polygons.len());
    for p in polygons {
        let depth = forest.depth_of(p.id()).ok_or_else(|| format!("polygon {:?} is missing from the forest", p.id()))?;
        layers.push((depth, p));
    }
    layers.sort_by_key(|&(d, p)| (d, p.id()));

    let pts = polygons.iter().flat_map(|p| p.vertices()).map(|v| (v.x.to_f64(), v.y.to_f64()));
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (x, y) in pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = span * MARGIN;
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = span / 500.0;
    let font = span / 40.0;
    // Flip y so the drawing matches the usual orientation of the plane.
    let tx = |x: f64| x - x0 + pad;
    let ty = |y: f64| y1 - y + pad;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.3} {h:.3}" width="800" height="{:.0}">"#,
        800.0 * h / w
    )
    .unwrap();
    for &(depth, p) in &layers {
        let points: Vec<String> =
            p.vertices().iter().map(|v| format!("{:.3},{:.3}", tx(v.x.to_f64()), ty(v.y.to_f64()))).collect();
        writeln!(
            out,
            r##"  <polygon points="{}" fill="{}" stroke="#333" stroke-width="{stroke:.3}"/>"##,
            points.join(" "),
            color(depth)
        )
        .unwrap();
    }
    for &(depth, p) in &layers {
        let c = interior_point(p).map_err(|e| e.to_string())?;
        writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="{font:.3}" text-anchor="middle">{} ({depth})</text>"#,
            tx(c.x.to_f64()),
            ty(c.y.to_f64()),
            escape(p.id())
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
