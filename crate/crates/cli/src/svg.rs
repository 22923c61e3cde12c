//! Minimal static SVG line plots, enough to eyeball a curve next to its CSV.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 46.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: Vec<(f64, f64)>,
}

pub fn write_plot(path: &Path, title: &str, series: &[Series]) -> std::io::Result<()> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        w,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        title
    )?;
    // axes
    writeln!(
        w,
        r#"<path d="M {m} {t} L {m} {b} L {r} {b}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    )?;
    for (v, x, y, anchor) in [
        (x0, MARGIN, HEIGHT - MARGIN + 16.0, "middle"),
        (x1, WIDTH - MARGIN, HEIGHT - MARGIN + 16.0, "middle"),
    ] {
        writeln!(
            w,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{v:.4}</text>"#
        )?;
    }
    for (v, y) in [(y0, HEIGHT - MARGIN), (y1, MARGIN)] {
        writeln!(
            w,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.4}</text>"#,
            x = MARGIN - 6.0
        )?;
    }
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path_data: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .enumerate()
            .map(|(k, &(x, y))| {
                format!("{}{:.2} {:.2}", if k == 0 { "M " } else { "L " }, sx(x), sy(y))
            })
            .collect();
        writeln!(w, r#"<path d="{}" stroke="{color}" fill="none" stroke-width="1.5"/>"#, path_data.join(" "))?;
        writeln!(
            w,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" fill="{color}">{label}</text>"#,
            x = WIDTH - MARGIN - 140.0,
            y = MARGIN + 16.0 * (i + 1) as f64,
            label = s.label
        )?;
    }
    writeln!(w, "</svg>")?;
    w.flush()
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}
