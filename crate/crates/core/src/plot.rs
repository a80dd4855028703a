//! Hand-rolled SVG charts: survival curves per solver and the two-solver
//! scatter comparison with sat/unsat coloring.

use std::fmt::Write as _;
use std::path::Path;

use crate::bench::{ScatterPoint, SurvivalSeries};
use crate::error::{Error, Result};
use crate::smtlib::Status;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 70.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

const SAT_COLOR: &str = "#1f77b4"; // blue
const UNSAT_COLOR: &str = "#d62728"; // red
const OTHER_COLOR: &str = "#7f7f7f";

struct Canvas {
    svg: String,
}

impl Canvas {
    fn new(title: &str) -> Canvas {
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(
            svg,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="30" font-family="sans-serif" font-size="18" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            escape(title)
        );
        Canvas { svg }
    }

    fn axes(&mut self, x_label: &str, y_label: &str, x_max: f64, y_max: f64) {
        let x0 = MARGIN;
        let y0 = HEIGHT - MARGIN;
        let x1 = WIDTH - MARGIN;
        let y1 = MARGIN;
        let _ = writeln!(
            self.svg,
            r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
        );
        let _ = writeln!(
            self.svg,
            r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
        );
        for i in 0..=4 {
            let frac = i as f64 / 4.0;
            let xv = x_max * frac;
            let yv = y_max * frac;
            let px = x0 + (x1 - x0) * frac;
            let py = y0 - (y0 - y1) * frac;
            let _ = writeln!(
                self.svg,
                r#"<line x1="{px}" y1="{y0}" x2="{px}" y2="{}" stroke="black"/>"#,
                y0 + 5.0
            );
            let _ = writeln!(
                self.svg,
                r#"<text x="{px}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
                y0 + 20.0,
                fmt_tick(xv)
            );
            let _ = writeln!(
                self.svg,
                r#"<line x1="{}" y1="{py}" x2="{x0}" y2="{py}" stroke="black"/>"#,
                x0 - 5.0
            );
            let _ = writeln!(
                self.svg,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
                x0 - 8.0,
                py + 4.0,
                fmt_tick(yv)
            );
        }
        let _ = writeln!(
            self.svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 20.0,
            escape(x_label)
        );
        let _ = writeln!(
            self.svg,
            r#"<text x="20" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(y_label)
        );
    }

    fn finish(mut self) -> String {
        self.svg.push_str("</svg>\n");
        self.svg
    }
}

fn project(v: f64, v_max: f64, axis_start: f64, axis_len: f64) -> f64 {
    let frac = if v_max > 0.0 { (v / v_max).min(1.0) } else { 0.0 };
    axis_start + axis_len * frac
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 || v >= 10.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders cumulative-time survival curves, one polyline per solver.
pub fn survival_svg(series: &[SurvivalSeries]) -> String {
    let x_max = series
        .iter()
        .map(|s| s.points.len() as f64)
        .fold(0.0, f64::max)
        .max(1.0);
    let y_max = series
        .iter()
        .flat_map(|s| s.points.last())
        .map(|&(_, t)| t)
        .fold(0.0, f64::max)
        .max(1.0);

    let mut canvas = Canvas::new("Survival plot");
    canvas.axes("instances solved", "cumulative seconds", x_max, y_max);
    let x0 = MARGIN;
    let y0 = HEIGHT - MARGIN;
    let x_len = WIDTH - 2.0 * MARGIN;
    let y_len = -(HEIGHT - 2.0 * MARGIN);

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if !s.points.is_empty() {
            let coords: Vec<String> = s
                .points
                .iter()
                .map(|&(k, t)| {
                    format!(
                        "{:.1},{:.1}",
                        project(k as f64, x_max, x0, x_len),
                        project(t, y_max, y0, y_len)
                    )
                })
                .collect();
            let _ = writeln!(
                canvas.svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                coords.join(" ")
            );
        }
        let ly = MARGIN + 20.0 * i as f64;
        let _ = writeln!(
            canvas.svg,
            r#"<rect x="{}" y="{}" width="12" height="12" fill="{color}"/>"#,
            WIDTH - MARGIN - 150.0,
            ly - 10.0
        );
        let _ = writeln!(
            canvas.svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{} ({} solved)</text>"#,
            WIDTH - MARGIN - 132.0,
            ly,
            escape(&s.solver),
            s.points.len()
        );
    }
    canvas.finish()
}

/// Renders the per-instance scatter of two solvers; blue points are sat
/// instances, red unsat. Timed-out sides sit clamped at the limit.
pub fn scatter_svg(points: &[ScatterPoint], solver_a: &str, solver_b: &str) -> String {
    let max_time = points
        .iter()
        .flat_map(|p| [p.time_a, p.time_b])
        .fold(0.0, f64::max)
        .max(1.0);

    let mut canvas = Canvas::new(&format!("{solver_a} vs {solver_b} (timeouts clamped)"));
    canvas.axes(
        &format!("{solver_a} seconds"),
        &format!("{solver_b} seconds"),
        max_time,
        max_time,
    );
    let x0 = MARGIN;
    let y0 = HEIGHT - MARGIN;
    let x_len = WIDTH - 2.0 * MARGIN;
    let y_len = -(HEIGHT - 2.0 * MARGIN);

    // equal-time diagonal
    let _ = writeln!(
        canvas.svg,
        r##"<line x1="{x0}" y1="{y0}" x2="{}" y2="{}" stroke="#bbbbbb" stroke-dasharray="6,4"/>"##,
        x0 + x_len,
        y0 + y_len
    );

    for p in points {
        let cx = project(p.time_a, max_time, x0, x_len);
        let cy = project(p.time_b, max_time, y0, y_len);
        let color = match p.label {
            Some(Status::Sat) => SAT_COLOR,
            Some(Status::Unsat) => UNSAT_COLOR,
            _ => OTHER_COLOR,
        };
        let _ = writeln!(
            canvas.svg,
            r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="4" fill="{color}" fill-opacity="0.75"><title>{}</title></circle>"#,
            escape(&p.problem)
        );
        if p.disagreement {
            let _ = writeln!(
                canvas.svg,
                r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="7" fill="none" stroke="black" stroke-width="1.5"/>"#
            );
        }
    }
    for (label, color, offset) in [("sat", SAT_COLOR, 0.0), ("unsat", UNSAT_COLOR, 20.0)] {
        let ly = MARGIN + offset;
        let _ = writeln!(
            canvas.svg,
            r#"<circle cx="{}" cy="{}" r="5" fill="{color}"/>"#,
            WIDTH - MARGIN - 90.0,
            ly - 4.0
        );
        let _ = writeln!(
            canvas.svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{label}</text>"#,
            WIDTH - MARGIN - 78.0,
            ly
        );
    }
    canvas.finish()
}

pub fn write_survival_svg(series: &[SurvivalSeries], path: &Path) -> Result<()> {
    std::fs::write(path, survival_svg(series))
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

pub fn write_scatter_svg(
    points: &[ScatterPoint],
    solver_a: &str,
    solver_b: &str,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, scatter_svg(points, solver_a, solver_b))
        .map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
