//! Static SVG plots: a heat map over the parameter grid and boundary images
//! under the slit maps.

use std::fmt::Write;

use hsl_core::C64;

use crate::output::fmt9;

const SIZE: f64 = 480.0;

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{h}\" viewBox=\"0 0 {SIZE} {h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"8\" y=\"18\" font-family=\"monospace\" font-size=\"13\">{title}</text>\n",
        h = SIZE + 24.0
    )
}

/// Blue to red ramp for `u ∈ [0, 1]`.
fn ramp(u: f64) -> String {
    let u = if u.is_finite() { u.clamp(0.0, 1.0) } else { return "#888888".into() };
    let r = (255.0 * u).round() as u8;
    let b = (255.0 * (1.0 - u)).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

/// `n × n` cells in row-major order, `Im t` increasing upward.
pub fn heat_map(title: &str, n: usize, values: &[f64]) -> String {
    let finite = values.iter().cloned().filter(|v| v.is_finite());
    let lo = finite.clone().fold(f64::INFINITY, f64::min);
    let hi = finite.fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let cell = SIZE / n as f64;
    let mut s = header(&format!("{title}  [{} .. {}]", fmt9(lo), fmt9(hi)));
    for (idx, v) in values.iter().enumerate() {
        let (i, k) = (idx / n, idx % n);
        let y = 24.0 + SIZE - (i + 1) as f64 * cell;
        writeln!(
            s,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
            k as f64 * cell,
            y,
            cell,
            cell,
            ramp((v - lo) / span)
        )
        .expect("write to string");
    }
    s.push_str("</svg>\n");
    s
}

/// Closed or open polylines in a common, aspect-preserving frame.
pub fn curves(title: &str, lines: &[(Vec<C64>, &str)]) -> String {
    let pts = lines.iter().flat_map(|(l, _)| l.iter()).filter(|z| z.re.is_finite() && z.im.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in pts {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    let scale = 0.9 * SIZE / (x1 - x0).max(y1 - y0).max(1e-12);
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let map = |z: &C64| (SIZE / 2.0 + scale * (z.re - cx), 24.0 + SIZE / 2.0 - scale * (z.im - cy));
    let mut s = header(title);
    for (line, color) in lines {
        let mut d = String::new();
        for z in line.iter().filter(|z| z.re.is_finite() && z.im.is_finite()) {
            let (x, y) = map(z);
            write!(d, "{x:.2},{y:.2} ").expect("write to string");
        }
        writeln!(s, "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>", d.trim_end())
            .expect("write to string");
    }
    s.push_str("</svg>\n");
    s
}
