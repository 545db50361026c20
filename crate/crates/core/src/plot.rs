//! SVG figures: a bar diagram for barcodes and an annulus for circle
//! sheaves. Closed endpoints are drawn as filled caps (`cap-closed`), open
//! ones as hollow caps (`cap-open`), unbounded ends as arrows reaching the
//! frame. Output is a deterministic function of the input.

use std::fmt::Write as _;

use crate::barcode::GradedBarcode;
use crate::circle::CircleSheaf;
use crate::interval::{EndpointKind, Interval};
use crate::scalar::{ExtendedScalar, Scalar};

const WIDTH: f64 = 640.0;
const ROW: f64 = 18.0;
const BAND_GAP: f64 = 14.0;
const MARGIN: f64 = 48.0;
const STYLE: &str = ".frame{fill:none;stroke:#444}.bar{stroke:#1f4e9c;stroke-width:3}\
.cap-closed{fill:#1f4e9c;stroke:#1f4e9c}.cap-open{fill:#fff;stroke:#1f4e9c;stroke-width:1.5}\
.band{fill:none;stroke:#b5401f;stroke-width:3;stroke-dasharray:6 3}.label{font:12px sans-serif;fill:#222}\
.axis{font:10px sans-serif;fill:#555}";

fn header(out: &mut String, w: f64, h: f64) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    )
    .unwrap();
    writeln!(out, "<style>{STYLE}</style>").unwrap();
    writeln!(out, r#"<rect class="frame" x="0.5" y="0.5" width="{:.0}" height="{:.0}"/>"#, w - 1.0, h - 1.0).unwrap();
}

fn cap(out: &mut String, kind: EndpointKind, x: f64, y: f64) {
    let class = match kind {
        EndpointKind::Closed => "cap-closed",
        EndpointKind::Open => "cap-open",
    };
    writeln!(out, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="4"/>"#).unwrap();
}

fn arrow(out: &mut String, x: f64, y: f64, dir: f64) {
    let t = x - 7.0 * dir;
    writeln!(
        out,
        r#"<polygon class="cap-closed" points="{x:.2},{y:.2} {t:.2},{:.2} {t:.2},{:.2}"/>"#,
        y - 4.0,
        y + 4.0
    )
    .unwrap();
}

/// Persistence-style diagram: one horizontal band of rows per degree.
pub fn barcode_svg(f: &GradedBarcode) -> String {
    let ends = f.finite_endpoints();
    let (lo, hi) = match (ends.first(), ends.last()) {
        (Some(a), Some(b)) if a < b => (a.to_f64(), b.to_f64()),
        (Some(a), _) => (a.to_f64() - 1.0, a.to_f64() + 1.0),
        _ => (0.0, 1.0),
    };
    let span = hi - lo;
    let (x0, x1) = (MARGIN + 24.0, WIDTH - 24.0);
    let scale = |x: f64| x0 + 24.0 + (x - lo) / span * (x1 - x0 - 48.0);
    let mut degrees: Vec<i64> = f.bars().iter().map(|b| b.degree).collect();
    degrees.dedup();
    let rows = f.len() as f64;
    let height = 2.0 * MARGIN + rows * ROW + degrees.len().saturating_sub(1) as f64 * BAND_GAP;
    let mut out = String::new();
    header(&mut out, WIDTH, height.max(2.0 * MARGIN));
    writeln!(out, r#"<text class="axis" x="{:.2}" y="{:.2}">{}</text>"#, scale(lo), height - 16.0, lo).unwrap();
    writeln!(out, r#"<text class="axis" x="{:.2}" y="{:.2}">{}</text>"#, scale(hi), height - 16.0, hi).unwrap();
    let mut y = MARGIN;
    let mut last = None;
    for b in f.bars() {
        if last != Some(b.degree) {
            if last.is_some() {
                y += BAND_GAP;
            }
            writeln!(out, r#"<text class="label" x="8" y="{:.2}">deg {}</text>"#, y + 4.0, b.degree).unwrap();
            last = Some(b.degree);
        }
        draw_interval(&mut out, &b.interval, y, &scale, x0, x1);
        y += ROW;
    }
    out.push_str("</svg>\n");
    out
}

fn draw_interval(out: &mut String, iv: &Interval, y: f64, scale: &dyn Fn(f64) -> f64, x0: f64, x1: f64) {
    let l = iv.left().finite().map_or(x0, |s| scale(s.to_f64()));
    let r = iv.right().finite().map_or(x1, |s| scale(s.to_f64()));
    writeln!(out, r#"<line class="bar" x1="{l:.2}" y1="{y:.2}" x2="{r:.2}" y2="{y:.2}"><title>{iv}</title></line>"#).unwrap();
    match iv.left() {
        ExtendedScalar::Finite(_) => cap(out, iv.left_kind(), l, y),
        _ => arrow(out, l, y, -1.0),
    }
    match iv.right() {
        ExtendedScalar::Finite(_) if iv.left() != iv.right() => cap(out, iv.right_kind(), r, y),
        ExtendedScalar::Finite(_) => {}
        _ => arrow(out, r, y, 1.0),
    }
}

/// Spirals wind around an annulus, moving outward by one ring per turn;
/// bands are dashed full rings outside them.
pub fn circle_svg(f: &CircleSheaf) -> String {
    let c = f.circumference().to_f64();
    let size = 480.0;
    let (cx, cy) = (size / 2.0, size / 2.0);
    let inner = 60.0;
    let turns: Vec<f64> = f
        .spirals()
        .iter()
        .map(|b| (length(&b.interval) / c).ceil().max(1.0))
        .collect();
    let rings = turns.iter().sum::<f64>() + f.bands().len() as f64;
    let step = if rings > 0.0 { (size / 2.0 - inner - 30.0) / rings } else { 0.0 };
    let mut out = String::new();
    header(&mut out, size, size);
    writeln!(out, r#"<circle class="frame" cx="{cx}" cy="{cy}" r="{inner}"/>"#).unwrap();
    writeln!(out, r#"<text class="axis" x="{cx}" y="{cy}" text-anchor="middle">C = {}</text>"#, f.circumference()).unwrap();
    let point = |t: f64, r: f64| {
        let th = std::f64::consts::TAU * t / c - std::f64::consts::FRAC_PI_2;
        (cx + r * th.cos(), cy + r * th.sin())
    };
    let mut base = inner + step / 2.0;
    for (b, &n) in f.spirals().iter().zip(&turns) {
        let iv = &b.interval;
        let lo = iv.left().finite().map(Scalar::to_f64).unwrap_or(0.0);
        let hi = iv.right().finite().map(Scalar::to_f64).unwrap_or(lo);
        let samples = 16 * n as usize + 2;
        let mut pts = String::new();
        for k in 0..=samples {
            let t = lo + (hi - lo) * k as f64 / samples as f64;
            let (x, y) = point(t, base + step * (t - lo) / c);
            write!(pts, "{x:.2},{y:.2} ").unwrap();
        }
        writeln!(out, r#"<polyline class="bar" fill="none" points="{}"><title>{b}</title></polyline>"#, pts.trim_end()).unwrap();
        let (lx, ly) = point(lo, base);
        cap(&mut out, iv.left_kind(), lx, ly);
        if hi > lo {
            let (rx, ry) = point(hi, base + step * (hi - lo) / c);
            cap(&mut out, iv.right_kind(), rx, ry);
        }
        writeln!(out, r#"<text class="label" x="{:.2}" y="{:.2}">deg {}</text>"#, lx + 6.0, ly - 6.0, b.degree).unwrap();
        base += step * n;
    }
    for band in f.bands() {
        writeln!(
            out,
            r#"<circle class="band" cx="{cx}" cy="{cy}" r="{base:.2}"><title>band deg {} rank {}</title></circle>"#,
            band.degree,
            band.rank()
        )
        .unwrap();
        base += step;
    }
    out.push_str("</svg>\n");
    out
}

fn length(iv: &Interval) -> f64 {
    match (iv.left().finite(), iv.right().finite()) {
        (Some(a), Some(b)) => (b - a).to_f64(),
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::Bar;

    fn bc(bars: &[(&str, i64)]) -> GradedBarcode {
        GradedBarcode::new(bars.iter().map(|(s, d)| Bar::new(s.parse().unwrap(), *d)).collect())
    }

    #[test]
    fn empty_plot_is_framed() {
        let svg = barcode_svg(&GradedBarcode::empty());
        assert!(svg.contains(r#"class="frame""#));
        assert!(!svg.contains(r#"class="bar""#));
    }

    #[test]
    fn two_degrees_give_two_labelled_rows() {
        let svg = barcode_svg(&bc(&[("[0,1]", 0), ("(1,2)", 1)]));
        assert_eq!(svg.matches(r#"class="bar""#).count(), 2);
        assert!(svg.contains(">deg 0<") && svg.contains(">deg 1<"));
    }

    #[test]
    fn endpoint_kinds_are_distinct() {
        let svg = barcode_svg(&bc(&[("[0,1)", 0)]));
        assert_eq!(svg.matches("cap-closed\" cx").count(), 1);
        assert_eq!(svg.matches("cap-open\" cx").count(), 1);
        let rays = barcode_svg(&bc(&[("(-inf,inf)", 0)]));
        assert_eq!(rays.matches("<polygon").count(), 2);
    }

    #[test]
    fn annulus() {
        let band = crate::circle::Band::trivial(0, 1);
        let f = CircleSheaf::new(Scalar::int(4), 2, vec![Bar::new("[0,6]".parse().unwrap(), 0)], vec![band]).unwrap();
        let svg = circle_svg(&f);
        assert!(svg.contains("<polyline") && svg.contains(r#"class="band""#));
        assert_eq!(svg, circle_svg(&f));
    }
}
