//! Contour plots of `log10|phi|` as standalone SVG.

use std::collections::HashMap;
use std::fmt::Write;

use ratapprox::{Domain, PotentialField, C64};

/// Longest side of the plot area in pixels.
const PLOT_SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;
/// Room for the imaginary-axis labels.
const LEFT: f64 = 64.0;
const BAR_WIDTH: f64 = 18.0;
const BAR_GAP: f64 = 24.0;
const LABEL_SPACE: f64 = 60.0;
/// Colour ramp for contour levels, low to high.
const RAMP: [(f64, [u8; 3]); 5] = [
    (0.0, [0x30, 0x12, 0x3b]),
    (0.25, [0x46, 0x6b, 0xe3]),
    (0.5, [0x1b, 0xd0, 0xd5]),
    (0.75, [0x61, 0xfc, 0x6c]),
    (1.0, [0xb8, 0xd8, 0x2c]),
];

/// A polyline in the complex plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub points: Vec<C64>,
    pub closed: bool,
}

impl Curve {
    /// Outline of a domain (for an interval, the segment itself).
    pub fn boundary(domain: &Domain) -> Self {
        match *domain {
            Domain::Interval { a, b } => Self { points: vec![C64::new(a, 0.0), C64::new(b, 0.0)], closed: false },
            _ => Self { points: domain.boundary_samples(720).expect("720 exceeds the sample minimum"), closed: true },
        }
    }
}

/// Edge of the cell-centre lattice: horizontal from `(i, j)` to `(i+1, j)`
/// or vertical from `(i, j)` to `(i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

/// Marching squares for one level: polylines in grid coordinates, where
/// `(x, y)` is the point between cell centres `(i, j)` and `(i+1, j+1)`.
/// Each returned chain is open or closed (first point repeated).
pub fn contour_lines(values: &[f64], nx: usize, ny: usize, level: f64) -> Vec<Vec<(f64, f64)>> {
    let v = |i: usize, j: usize| values[j * nx + i];
    let above = |i: usize, j: usize| v(i, j) >= level;
    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for j in 0..ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            let (c0, c1, c2, c3) = (above(i, j), above(i + 1, j), above(i + 1, j + 1), above(i, j + 1));
            let (bottom, right, top, left) = (Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j));
            let case = (c0 as u8) | (c1 as u8) << 1 | (c2 as u8) << 2 | (c3 as u8) << 3;
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((bottom, left)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((right, top)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((left, top)),
                5 | 10 => {
                    // saddle: the centre average decides which diagonal connects
                    let centre = (v(i, j) + v(i + 1, j) + v(i + 1, j + 1) + v(i, j + 1)) / 4.0 >= level;
                    if (case == 5) == centre {
                        segments.push((bottom, right));
                        segments.push((left, top));
                    } else {
                        segments.push((bottom, left));
                        segments.push((right, top));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    let point = |e: Edge| {
        let (a, b, (x0, y0), (dx, dy)) = match e {
            Edge::H(i, j) => (v(i, j), v(i + 1, j), (i as f64, j as f64), (1.0, 0.0)),
            Edge::V(i, j) => (v(i, j), v(i, j + 1), (i as f64, j as f64), (0.0, 1.0)),
        };
        let t = (level - a) / (b - a);
        (x0 + t * dx, y0 + t * dy)
    };
    stitch(&segments).into_iter().map(|chain| chain.into_iter().map(point).collect()).collect()
}

// Joins segments sharing an edge into chains, open chains first.
fn stitch(segments: &[(Edge, Edge)]) -> Vec<Vec<Edge>> {
    let mut at: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        at.entry(a).or_default().push(k);
        at.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut chains = Vec::new();
    let walk = |start: usize, from: Edge, used: &mut Vec<bool>| {
        let mut chain = vec![from];
        let (mut k, mut here) = (start, from);
        loop {
            used[k] = true;
            let (a, b) = segments[k];
            here = if a == here { b } else { a };
            chain.push(here);
            match at[&here].iter().find(|&&n| !used[n]) {
                Some(&n) => k = n,
                None => return chain,
            }
        }
    };
    for k in 0..segments.len() {
        let (a, b) = segments[k];
        if used[k] {
            continue;
        }
        if at[&a].len() == 1 {
            chains.push(walk(k, a, &mut used));
        } else if at[&b].len() == 1 {
            chains.push(walk(k, b, &mut used));
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            chains.push(walk(k, segments[k].0, &mut used));
        }
    }
    chains
}

fn colour(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let k = RAMP.iter().position(|&(s, _)| s >= t).unwrap_or(RAMP.len() - 1).max(1);
    let ((s0, c0), (s1, c1)) = (RAMP[k - 1], RAMP[k]);
    let u = (t - s0) / (s1 - s0);
    let mix = |a: u8, b: u8| (a as f64 + u * (b as f64 - a as f64)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(c0[0], c1[0]), mix(c0[1], c1[1]), mix(c0[2], c1[2]))
}

/// Renders contours at the field's integer levels, the boundary curves in
/// black, poles in red, supports in yellow and a labelled colour bar.
pub fn render(field: &PotentialField, boundary: &[Curve], title: &str) -> String {
    let w = &field.window;
    let (width, height) = (w.xmax - w.xmin, w.ymax - w.ymin);
    let scale = PLOT_SIZE / width.max(height);
    let (pw, ph) = (width * scale, height * scale);
    let px = |z: C64| (LEFT + (z.re - w.xmin) * scale, MARGIN + (w.ymax - z.im) * scale);
    let inside = |z: C64| z.re >= w.xmin && z.re <= w.xmax && z.im >= w.ymin && z.im <= w.ymax;
    // grid coordinates (cell centres) to pixels
    let (dx, dy) = (width / field.nx as f64, height / field.ny as f64);
    let grid = |(gx, gy): (f64, f64)| px(C64::new(w.xmin + (gx + 0.5) * dx, w.ymin + (gy + 0.5) * dy));

    let total_w = LEFT + pw + BAR_GAP + BAR_WIDTH + LABEL_SPACE;
    let total_h = 2.0 * MARGIN + ph;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w:.2}" height="{total_h:.2}" viewBox="0 0 {total_w:.2} {total_h:.2}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{LEFT:.2}" y="{MARGIN:.2}" width="{pw:.2}" height="{ph:.2}"/></clipPath>"#
    );
    let _ = write!(s, r#"<linearGradient id="bar" x1="0" y1="1" x2="0" y2="0">"#);
    for (stop, _) in RAMP {
        let _ = write!(s, r#"<stop offset="{stop:.2}" stop-color="{}"/>"#, colour(stop));
    }
    let _ = writeln!(s, "</linearGradient></defs>");
    let _ = writeln!(s, r#"<text x="{LEFT:.2}" y="{:.2}">{}</text>"#, MARGIN - 12.0, escape(title));

    let _ = writeln!(s, r#"<g clip-path="url(#plot)" fill="none" stroke-width="1">"#);
    let span = (field.clip_max - field.clip_min).max(f64::MIN_POSITIVE);
    for &level in &field.levels {
        let stroke = colour((level - field.clip_min) / span);
        let mut d = String::new();
        for chain in contour_lines(&field.log_abs_phi, field.nx, field.ny, level) {
            for (k, &p) in chain.iter().enumerate() {
                let (x, y) = grid(p);
                let _ = write!(d, "{}{x:.2} {y:.2}", if k == 0 { "M" } else { " L" });
            }
        }
        if !d.is_empty() {
            let _ = writeln!(s, r#"<path data-level="{level}" stroke="{stroke}" d="{d}"/>"#);
        }
    }
    for curve in boundary {
        let mut d = String::new();
        for (k, &z) in curve.points.iter().enumerate() {
            let (x, y) = px(z);
            let _ = write!(d, "{}{x:.2} {y:.2}", if k == 0 { "M" } else { " L" });
        }
        if curve.closed {
            d.push_str(" Z");
        }
        let _ = writeln!(s, r#"<path class="boundary" stroke="black" stroke-width="1.5" d="{d}"/>"#);
    }
    let _ = writeln!(s, "</g>");
    for (class, fill, points) in [("support", "yellow", &field.supports), ("pole", "red", &field.poles)] {
        for &z in points.iter().filter(|&&z| inside(z)) {
            let (x, y) = px(z);
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="3.00" fill="{fill}" stroke="black" stroke-width="0.5"/>"#
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.2}" y="{MARGIN:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="gray"/>"#
    );
    for (z, anchor, dxl, dyl) in
        [(C64::new(w.xmin, w.ymin), "start", 0.0, 14.0), (C64::new(w.xmax, w.ymin), "end", 0.0, 14.0)]
    {
        let (x, y) = px(z);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{:.2}</text>"#, x + dxl, y + dyl, z.re);
    }
    for im in [w.ymin, w.ymax] {
        let (x, y) = px(C64::new(w.xmin, im));
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{im:.2}</text>"#, x - 4.0, y + 4.0);
    }

    // colour bar
    let bx = LEFT + pw + BAR_GAP;
    let _ = writeln!(
        s,
        r#"<rect class="colorbar" x="{bx:.2}" y="{MARGIN:.2}" width="{BAR_WIDTH:.2}" height="{ph:.2}" fill="url(#bar)" stroke="black"/>"#
    );
    let every = field.levels.len().div_ceil(20).max(1);
    for (k, &level) in field.levels.iter().enumerate() {
        let y = MARGIN + ph * (1.0 - (level - field.clip_min) / span);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#,
            bx + BAR_WIDTH,
            bx + BAR_WIDTH + 4.0
        );
        if k % every == 0 {
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{level}</text>"#, bx + BAR_WIDTH + 6.0, y + 4.0);
        }
    }
    let _ = writeln!(s, r#"<text x="{bx:.2}" y="{:.2}">log10|φ|</text>"#, MARGIN - 12.0);
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
