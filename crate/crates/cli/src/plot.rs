//! Minimal static SVG line charts.

use std::fmt::Write as _;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN: f64 = 64.0;
const COLORS: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

fn bounds(series: &[Series]) -> Option<(f64, f64, f64, f64)> {
    let pts = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return None;
    }
    let pad = |a: f64, b: f64| if b > a { (a, b) } else { (a - 0.5, b + 0.5) };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    Some((x0, x1, y0, y1))
}

pub fn render(title: &str, x_label: &str, series: &[Series]) -> String {
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg.push('\n');
    writeln!(svg, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title)).unwrap();
    let Some((x0, x1, y0, y1)) = bounds(series) else {
        svg.push_str("</svg>\n");
        return svg;
    };
    let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph;
    writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(xv),
            HEIGHT - MARGIN + 16.0,
            tick(xv)
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            sy(yv) + 4.0,
            tick(yv)
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    )
    .unwrap();
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        // break the line at undefined points
        let mut segments: Vec<Vec<String>> = vec![Vec::new()];
        for &(x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                segments.last_mut().unwrap().push(format!("{:.2},{:.2}", sx(x), sy(y)));
            } else if !segments.last().unwrap().is_empty() {
                segments.push(Vec::new());
            }
        }
        for seg in segments.iter().filter(|s| !s.is_empty()) {
            writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                seg.join(" ")
            )
            .unwrap();
        }
        let ly = MARGIN + 16.0 + 16.0 * i as f64;
        writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{ly}" x2="{:.1}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            WIDTH - MARGIN - 170.0,
            WIDTH - MARGIN - 150.0,
            WIDTH - MARGIN - 144.0,
            ly + 4.0,
            escape(&s.label)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick(v: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&v.abs()) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
