//! SVG rendering of the four-square flat chart, the spine and plans.

use std::f64::consts::PI;
use std::fmt::Write as _;

use fig8_plan::geometry::POLE;
use fig8_plan::{ChainCircle, ChainVertex, Circle, CirclePoint, Configuration, PhysPath, Plan, Square};

/// Which layers to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    pub squares: bool,
    pub diagonal: bool,
    pub spine: bool,
    pub traces: bool,
    pub path: bool,
    pub vertices: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers { squares: true, diagonal: true, spine: true, traces: true, path: true, vertices: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Canvas width in pixels; the height follows from the layout.
    pub width: u32,
    /// Square placement, rows from top to bottom.
    pub layout: [[Square; 2]; 2],
    pub layers: Layers,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 720,
            layout: [[Square::AA, Square::AB], [Square::BA, Square::BB]],
            layers: Layers::default(),
        }
    }
}

const MARGIN: f64 = 40.0;

struct Frame {
    cell: f64,
    origins: Vec<(Square, f64, f64)>,
    inset_y: f64,
    height: f64,
}

impl Frame {
    fn new(spec: &RenderSpec) -> Frame {
        let cell = (f64::from(spec.width) - 3.0 * MARGIN) / 2.0;
        let mut origins = Vec::new();
        for (row, squares) in spec.layout.iter().enumerate() {
            for (col, &sq) in squares.iter().enumerate() {
                origins.push((sq, MARGIN + col as f64 * (cell + MARGIN), MARGIN + row as f64 * (cell + MARGIN)));
            }
        }
        let inset_y = 3.0 * MARGIN + 2.0 * cell;
        Frame { cell, origins, inset_y, height: inset_y + cell / 2.0 + MARGIN }
    }

    /// Pixel position of flat coordinates `(a, b)` in `square`; `b` grows upward.
    fn px(&self, square: Square, a: f64, b: f64) -> (f64, f64) {
        let &(_, x0, y0) = self.origins.iter().find(|o| o.0 == square).expect("layout covers every square");
        (x0 + a * self.cell, y0 + (1.0 - b) * self.cell)
    }
}

fn points(list: &[(f64, f64)]) -> String {
    list.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ")
}

/// Flat segments of a path, one per waypoint segment, each in the square of
/// the circles the robots occupy during that segment.
pub fn flat_segments(path: &PhysPath) -> Vec<(Square, [(f64, f64); 2])> {
    let w = path.waypoints();
    w.windows(2)
        .map(|pair| {
            let (m1, m2) = path.positions_at(0.5 * (pair[0].t + pair[1].t));
            let circle = |mid: CirclePoint, other: CirclePoint| {
                if mid.is_center() {
                    other.circle().opposite()
                } else {
                    mid.circle()
                }
            };
            let (c1, c2) = (circle(m1, m2), circle(m2, m1));
            let coord = |p: CirclePoint, mid: CirclePoint| {
                if p.is_center() && mid.s() > POLE {
                    1.0
                } else {
                    p.s()
                }
            };
            let ends = [0, 1].map(|k| (coord(pair[k].config.r1(), m1), coord(pair[k].config.r2(), m2)));
            (Square::from_circles(c1, c2), ends)
        })
        .collect()
}

fn polyline(out: &mut String, frame: &Frame, path: &PhysPath, class: &str) {
    for (sq, ends) in flat_segments(path) {
        let pts: Vec<_> = ends.iter().map(|&(a, b)| frame.px(sq, a, b)).collect();
        let _ = writeln!(out, r#"<polyline class="{class}" data-square="{sq}" points="{}"/>"#, points(&pts));
    }
}

fn glyph(out: &mut String, robot: u8, x: f64, y: f64, class: &str) {
    let r = 7.0;
    if robot == 1 {
        let tri = [(x, y - r), (x - r, y + r * 0.8), (x + r, y + r * 0.8)];
        let _ = writeln!(out, r#"<polygon class="robot1 {class}" points="{}"/>"#, points(&tri));
    } else {
        let _ = writeln!(
            out,
            r#"<rect class="robot2 {class}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
            x - r * 0.8,
            y - r * 0.8,
            r * 1.6,
            r * 1.6
        );
    }
}

/// Pixel position on the track inset: circle A on the left, circle B on the
/// right, touching at the center.
fn track_px(frame: &Frame, p: &CirclePoint) -> (f64, f64) {
    let r = frame.cell / 5.0;
    let (cx, cy) = (MARGIN + frame.cell + MARGIN / 2.0, frame.inset_y + frame.cell / 4.0);
    let angle = 2.0 * PI * p.s();
    match p.circle() {
        Circle::A => (cx - r + r * angle.cos(), cy - r * angle.sin()),
        Circle::B => (cx + r - r * angle.cos(), cy - r * angle.sin()),
    }
}

fn inset(out: &mut String, frame: &Frame, ends: Option<(Configuration, Configuration)>) {
    let r = frame.cell / 5.0;
    let (cx, cy) = (MARGIN + frame.cell + MARGIN / 2.0, frame.inset_y + frame.cell / 4.0);
    out.push_str("<g id=\"track\">\n");
    for (label, x) in [("A", cx - r), ("B", cx + r)] {
        let _ = writeln!(out, r#"<circle class="track" data-circle="{label}" cx="{x:.2}" cy="{cy:.2}" r="{r:.2}"/>"#);
    }
    if let Some((start, end)) = ends {
        for (config, class) in [(start, "start"), (end, "end")] {
            let (x, y) = track_px(frame, &config.r1());
            glyph(out, 1, x, y, class);
            let (x, y) = track_px(frame, &config.r2());
            glyph(out, 2, x, y, class);
        }
    }
    out.push_str("</g>\n");
}

fn glue_ticks(out: &mut String, frame: &Frame, sq: Square) {
    let (c1, c2) = sq.circles();
    let t = 6.0;
    // robot 1 at the center: vertical edges, one tick per letter of robot 2
    let n2 = if c2 == Circle::A { 1 } else { 2 };
    let n1 = if c1 == Circle::A { 1 } else { 2 };
    for a in [0.0, 1.0] {
        for k in 0..n2 {
            let (x, y) = frame.px(sq, a, 0.5);
            let y = y + 5.0 * k as f64;
            let _ = writeln!(out, r#"<line class="glue" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/>"#, x - t, x + t);
        }
    }
    for b in [0.0, 1.0] {
        for k in 0..n1 {
            let (x, y) = frame.px(sq, 0.5, b);
            let x = x + 5.0 * k as f64;
            let _ = writeln!(out, r#"<line class="glue" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/>"#, y - t, y + t);
        }
    }
}

const STYLE: &str = "\
.cell{fill:#fbfbf8;stroke:#444;stroke-width:1}
.label{font:14px sans-serif;fill:#444}
.diagonal{stroke:#b33;stroke-dasharray:6 4;stroke-width:1.5}
.glue{stroke:#444;stroke-width:1.5}
.spine-arc{stroke:#2a6fdb;stroke-width:3}
.vertex{fill:#fff;stroke:#123;stroke-width:2}
.trace{fill:none;stroke:#e08a00;stroke-width:2}
.chain{fill:none;stroke:#1a9c4a;stroke-width:2.5}
.marker{stroke:#000;stroke-width:1.5}
.start{fill:#000}
.end{fill:#fff;stroke:#000}
.track{fill:none;stroke:#444;stroke-width:2}";

/// Renders the flat chart with the spine and, if given, a plan.
pub fn render_svg(plan: Option<&Plan>, spec: &RenderSpec) -> String {
    let frame = Frame::new(spec);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{:.0}" viewBox="0 0 {} {:.0}">
<style>
{STYLE}
</style>"#,
        spec.width, frame.height, spec.width, frame.height
    );
    let layers = spec.layers;
    if layers.squares {
        out.push_str("<g id=\"squares\">\n");
        for &(sq, x, y) in &frame.origins {
            let _ = writeln!(
                out,
                r#"<rect class="cell" data-square="{sq}" x="{x:.2}" y="{y:.2}" width="{c:.2}" height="{c:.2}"/>"#,
                c = frame.cell
            );
            let _ = writeln!(out, r#"<text class="label" x="{:.2}" y="{:.2}">{sq}</text>"#, x, y - 8.0);
            glue_ticks(&mut out, &frame, sq);
        }
        out.push_str("</g>\n");
    }
    if layers.diagonal {
        out.push_str("<g id=\"diagonal\">\n");
        for sq in [Square::AA, Square::BB] {
            let (x1, y1) = frame.px(sq, 0.0, 0.0);
            let (x2, y2) = frame.px(sq, 1.0, 1.0);
            let _ = writeln!(out, r#"<line class="diagonal" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
        }
        out.push_str("</g>\n");
    }
    if layers.spine {
        out.push_str("<g id=\"spine\">\n");
        for circle in ChainCircle::ALL {
            for half in 0..2 {
                let from = 0.5 * half as f64;
                let (a0, b0) = circle.flat_at(from);
                let (a1, b1) = circle.flat_at(from + 0.5);
                // R and Bc wrap: on the second half b runs from 0 up to 1/2
                let b0 = if half == 1 && b0 == 1.0 { 0.0 } else { b0 };
                let (x1, y1) = frame.px(circle.square(), a0, b0);
                let (x2, y2) = frame.px(circle.square(), a1, b1);
                let _ = writeln!(
                    out,
                    r#"<line class="spine-arc" data-circle="{circle}" data-half="{half}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
                );
            }
        }
        out.push_str("</g>\n");
    }
    if let Some(p) = plan {
        if layers.traces {
            out.push_str("<g id=\"traces\">\n");
            polyline(&mut out, &frame, &p.trace_in, "trace");
            polyline(&mut out, &frame, &p.trace_out, "trace");
            out.push_str("</g>\n");
        }
        if layers.path {
            out.push_str("<g id=\"path\">\n");
            if !p.chain_path.is_empty() {
                polyline(&mut out, &frame, &p.middle, "chain");
            }
            out.push_str("</g>\n");
        }
    }
    if layers.vertices {
        out.push_str("<g id=\"vertices\">\n");
        for v in ChainVertex::ALL {
            let f = v.flat();
            let (x, y) = frame.px(f.square, f.a, f.b);
            let _ = writeln!(out, r#"<circle class="vertex" data-vertex="{v}" cx="{x:.2}" cy="{y:.2}" r="5"/>"#);
        }
        out.push_str("</g>\n");
    }
    if let Some(p) = plan {
        out.push_str("<g id=\"markers\">\n");
        for (config, class) in [(p.initial, "start"), (p.target, "end")] {
            let f = config.to_flat();
            let (x, y) = frame.px(f.square, f.a, f.b);
            let _ = writeln!(out, r#"<circle class="marker {class}" cx="{x:.2}" cy="{y:.2}" r="6"/>"#);
        }
        out.push_str("</g>\n");
    }
    inset(&mut out, &frame, plan.map(|p| (p.initial, p.target)));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fig8_plan::plan;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn spine_only() {
        let svg = render_svg(None, &RenderSpec::default());
        assert_eq!(count(&svg, "class=\"spine-arc\""), 12);
        assert_eq!(count(&svg, "class=\"vertex\""), 6);
        assert_eq!(count(&svg, "class=\"diagonal\""), 2);
        assert!(!svg.contains("class=\"marker"));
    }

    #[test]
    fn spine_arcs_are_axis_or_diagonal_lines() {
        let svg = render_svg(None, &RenderSpec { width: 520, ..RenderSpec::default() });
        // cells are 200 px: arcs are half an edge or half a diagonal
        for line in svg.lines().filter(|l| l.contains("class=\"spine-arc\"")) {
            let num = |key: &str| -> f64 {
                let start = line.find(&format!("{key}=\"")).unwrap() + key.len() + 2;
                line[start..].split('"').next().unwrap().parse().unwrap()
            };
            let (dx, dy) = (num("x2") - num("x1"), num("y2") - num("y1"));
            let len = (dx * dx + dy * dy).sqrt();
            let diagonal = 100.0 * 2f64.sqrt();
            assert!((len - 100.0).abs() < 0.1 || (len - diagonal).abs() < 0.1, "{line}");
        }
    }

    #[test]
    fn empty_plan_has_one_marker_pair() {
        let c = Configuration::new("A:0.3".parse().unwrap(), "B:0.1".parse().unwrap()).unwrap();
        let p = plan(&c, &c).unwrap();
        let svg = render_svg(Some(&p), &RenderSpec::default());
        assert_eq!(count(&svg, "class=\"marker start\""), 1);
        assert_eq!(count(&svg, "class=\"marker end\""), 1);
        assert_eq!(count(&svg, "class=\"chain\""), 0);
    }

    #[test]
    fn layers_toggle() {
        let spec = RenderSpec { layers: Layers { spine: false, ..Layers::default() }, ..RenderSpec::default() };
        assert_eq!(count(&render_svg(None, &spec), "class=\"spine-arc\""), 0);
    }
}
