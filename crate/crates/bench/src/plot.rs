//! Log-log error plots written as standalone SVG.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qmegs::Algorithm;

use crate::error::{BenchError, BenchResult};
use crate::records::SweepRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Maximal single-run evolution time.
    Tmax,
    /// Summed evolution time.
    Ttotal,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Tmax => "tmax",
            Axis::Ttotal => "ttotal",
        }
    }

    fn label(self) -> &'static str {
        match self {
            Axis::Tmax => "depth T_max",
            Axis::Ttotal => "cost T_total",
        }
    }

    fn pick(self, r: &SweepRecord) -> f64 {
        match self {
            Axis::Tmax => r.t_max,
            Axis::Ttotal => r.t_total,
        }
    }
}

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    quantile(values, 0.5)
}

struct Point {
    x: f64,
    median: f64,
    q1: f64,
    q3: f64,
}

struct Series {
    algorithm: Algorithm,
    color: &'static str,
    points: Vec<Point>,
}

fn collect_series(records: &[SweepRecord], axis: Axis) -> (Vec<Series>, Vec<Algorithm>) {
    let mut series = Vec::new();
    let mut skipped = Vec::new();
    for (idx, &algorithm) in Algorithm::ALL.iter().enumerate() {
        let rows: Vec<&SweepRecord> = records.iter().filter(|r| r.algorithm == algorithm).collect();
        if rows.is_empty() {
            continue;
        }
        let mut depths: Vec<f64> = rows.iter().map(|r| r.depth).collect();
        depths.sort_by(f64::total_cmp);
        depths.dedup();
        let mut points = Vec::new();
        for depth in depths {
            let ok: Vec<&&SweepRecord> = rows
                .iter()
                .filter(|r| r.depth == depth && r.error.is_finite() && axis.pick(r).is_finite())
                .collect();
            if ok.is_empty() {
                continue;
            }
            let mut errors: Vec<f64> = ok.iter().map(|r| r.error).collect();
            errors.sort_by(f64::total_cmp);
            let mut xs: Vec<f64> = ok.iter().map(|r| axis.pick(r)).collect();
            let point = Point {
                x: median(&mut xs),
                median: quantile(&errors, 0.5),
                q1: quantile(&errors, 0.25),
                q3: quantile(&errors, 0.75),
            };
            if point.x > 0.0 && point.median > 0.0 {
                points.push(point);
            }
        }
        if points.is_empty() {
            skipped.push(algorithm);
        } else {
            series.push(Series { algorithm, color: COLORS[idx % COLORS.len()], points });
        }
    }
    (series, skipped)
}

/// Decade range `[10^lo, 10^hi]` covering the positive values, at least one
/// decade wide.
fn decades(values: impl Iterator<Item = f64>) -> (i32, i32) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| *v > 0.0 && v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0, 1);
    }
    let a = lo.log10().floor() as i32;
    let b = (hi.log10().ceil() as i32).max(a + 1);
    (a, b)
}

struct Frame {
    x: (i32, i32),
    y: (i32, i32),
}

impl Frame {
    fn px(&self, v: f64) -> f64 {
        let t = (v.log10() - self.x.0 as f64) / (self.x.1 - self.x.0) as f64;
        LEFT + t * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, v: f64) -> f64 {
        let lv = v.log10().max(self.y.0 as f64);
        let t = (lv - self.y.0 as f64) / (self.y.1 - self.y.0) as f64;
        HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)
    }
}

fn decade_label(k: i32) -> String {
    format!("10<tspan dy=\"-7\" font-size=\"10\">{k}</tspan>")
}

/// SVG text for the median error (with interquartile band) against the
/// median of `axis`, one series per algorithm.
pub fn render_svg(records: &[SweepRecord], axis: Axis) -> BenchResult<String> {
    if records.is_empty() {
        return Err(BenchError::Config("cannot plot an empty record table".into()));
    }
    let (series, skipped) = collect_series(records, axis);
    let frame = Frame {
        x: decades(series.iter().flat_map(|s| s.points.iter().map(|p| p.x))),
        y: decades(series.iter().flat_map(|s| s.points.iter().flat_map(|p| [p.median, p.q3]))),
    };
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(s, "<g class=\"grid\" stroke=\"#dddddd\">");
    for k in frame.x.0..=frame.x.1 {
        let x = frame.px(10f64.powi(k));
        let _ = writeln!(s, "<line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{y1:.2}\"/>");
    }
    for k in frame.y.0..=frame.y.1 {
        let y = frame.py(10f64.powi(k));
        let _ = writeln!(s, "<line x1=\"{x0:.2}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\"/>");
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        "<rect x=\"{x0:.2}\" y=\"{y1:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>",
        x1 - x0,
        y0 - y1
    );
    for k in frame.x.0..=frame.x.1 {
        let x = frame.px(10f64.powi(k));
        let _ = writeln!(
            s,
            "<text class=\"xtick\" x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            y0 + 20.0,
            decade_label(k)
        );
    }
    for k in frame.y.0..=frame.y.1 {
        let y = frame.py(10f64.powi(k));
        let _ = writeln!(
            s,
            "<text class=\"ytick\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            x0 - 8.0,
            y + 4.0,
            decade_label(k)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 15.0,
        axis.label()
    );
    let _ = writeln!(
        s,
        "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">error</text>",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (i, series) in series.iter().enumerate() {
        let band: Vec<String> = series
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", frame.px(p.x), frame.py(p.q3)))
            .chain(series.points.iter().rev().map(|p| format!("{:.2},{:.2}", frame.px(p.x), frame.py(p.q1.max(f64::MIN_POSITIVE)))))
            .collect();
        let _ = writeln!(
            s,
            "<polygon class=\"iqr\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.15\" stroke=\"none\"/>",
            band.join(" "),
            series.color
        );
        let line: Vec<String> = series
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", frame.px(p.x), frame.py(p.median)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline class=\"series\" data-algorithm=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
            series.algorithm,
            line.join(" "),
            series.color
        );
        for p in &series.points {
            let _ = writeln!(
                s,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{}\"/>",
                frame.px(p.x),
                frame.py(p.median),
                series.color
            );
        }
        let ly = TOP + 20.0 + 20.0 * i as f64;
        let lx = x1 + 15.0;
        let _ = writeln!(
            s,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
            lx + 25.0,
            series.color
        );
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", lx + 32.0, ly + 4.0, series.algorithm);
    }
    for (i, algorithm) in skipped.iter().enumerate() {
        let _ = writeln!(
            s,
            "<text class=\"warning\" x=\"{:.2}\" y=\"{:.2}\" fill=\"#b00000\">warning: {algorithm} has no finite errors, series omitted</text>",
            x0 + 10.0,
            y1 + 16.0 + 16.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_plot(records: &[SweepRecord], axis: Axis, path: &Path) -> BenchResult<()> {
    let svg = render_svg(records, axis)?;
    fs::write(path, svg).map_err(|e| BenchError::io(path, e))
}
