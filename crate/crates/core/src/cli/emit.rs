//! CSV, JSON, SVG and ASCII rendering of reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::serde_util::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Ascii,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Real(x) => fmt_f64(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(n) => Some(*n as f64),
            Cell::Real(x) => Some(*x),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Real)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
    }
}

/// Rows of a report with a single header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn column(&self, name: &str) -> usize {
        self.columns.iter().position(|c| *c == name).expect("plot column exists")
    }
}

/// Line chart of some table columns against another.
#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub title: String,
    pub x: &'static str,
    pub ys: Vec<&'static str>,
    pub y_label: &'static str,
    pub log_x: bool,
    pub log_y: bool,
}

/// A report that can be emitted in every format.
pub trait Report: Serialize {
    /// Subcommand name, also the `kind` of the JSON envelope.
    fn kind(&self) -> &'static str;
    fn table(&self) -> Table;
    fn plot(&self) -> Plot;
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    kind: &'a str,
    data: &'a R,
}

pub fn render<R: Report>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(&report.table()),
        Format::Json => to_json(report),
        Format::Svg => Ok(to_svg(&report.table(), &report.plot())),
        Format::Ascii => Ok(to_ascii(&report.table(), &report.plot())),
    }
}

pub fn to_csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io { path: "<csv>".into(), message: e.to_string() };
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io { path: "<csv>".into(), message: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_json<R: Report>(report: &R) -> Result<String> {
    let envelope = Envelope { kind: report.kind(), data: report };
    let mut text = serde_json::to_string_pretty(&envelope)
        .map_err(|e| Error::Io { path: "<json>".into(), message: e.to_string() })?;
    text.push('\n');
    Ok(text)
}

/// Top-level keys every report kind must carry in `data`.
pub fn required_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "orbit" => &["map", "orbit", "closest_returns"],
        "preimages" => &["map", "target", "depth", "per_depth", "nodes", "samples"],
        "poincare" => &["map", "truncation"],
        "forward" => &["map", "truncation"],
        "exponent" => &["map", "estimate"],
        "rprofile" => &["map", "profile"],
        "children" => &["map", "delta", "cutoff", "records", "child_sum"],
        "returns" => &["map", "staircase", "bridges", "ratios", "ratio_spread", "bc_integral_t", "bc_integral_t_over_d"],
        "theoremb" => &["map", "depth", "rows"],
        "lb2bc" => &["map", "rows", "profile_summary", "return_derivatives"],
        "decay" => &["map", "delta_ref", "rows"],
        "regen-feigenbaum" => &["oracle", "reference", "difference"],
        _ => return None,
    })
}

/// Checks a JSON document against the envelope layout and the required
/// keys of its kind, and that it survives a parse/serialize round trip.
pub fn schema_check(text: &str) -> Result<Value> {
    let bad = |msg: String| Error::Domain(format!("schema: {msg}"));
    let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing string field `kind`".into()))?;
    let keys = required_keys(kind).ok_or_else(|| bad(format!("unknown kind {kind:?}")))?;
    let data = value
        .get("data")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("missing object field `data`".into()))?;
    for key in keys {
        if !data.contains_key(*key) {
            return Err(bad(format!("{kind}: missing key `{key}`")));
        }
    }
    let again: Value = serde_json::from_str(&value.to_string()).map_err(|e| bad(e.to_string()))?;
    if again != value {
        return Err(bad("round trip changed the document".into()));
    }
    Ok(value)
}

struct Series {
    name: &'static str,
    points: Vec<(f64, f64)>,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = values
            .map(|v| if log { v.log10() } else { v })
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if !lo.is_finite() {
            lo = 0.0;
            hi = 1.0;
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        Self { lo, hi, log }
    }

    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    /// Tick positions in data coordinates.
    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.ceil() as i32, self.hi.floor() as i32);
            let step = ((b - a) / 8).max(1);
            (a..=b).step_by(step as usize).map(|e| 10f64.powi(e)).collect()
        } else {
            (0..=4).map(|i| self.lo + (self.hi - self.lo) * f64::from(i) / 4.0).collect()
        }
    }
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.0e}")
    } else {
        format!("{}", (v * 1000.0).round() / 1000.0)
    }
}

fn collect_series(table: &Table, plot: &Plot) -> Vec<Series> {
    let xi = table.column(plot.x);
    plot.ys
        .iter()
        .map(|name| {
            let yi = table.column(name);
            let mut points: Vec<(f64, f64)> = table
                .rows
                .iter()
                .filter_map(|row| Some((row[xi].as_f64()?, row[yi].as_f64()?)))
                .filter(|&(x, y)| {
                    x.is_finite()
                        && y.is_finite()
                        && (!plot.log_x || x > 0.0)
                        && (!plot.log_y || y > 0.0)
                })
                .collect();
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            Series { name, points }
        })
        .collect()
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Static SVG line chart.
pub fn to_svg(table: &Table, plot: &Plot) -> String {
    let (width, height) = (720.0, 480.0);
    let (left, right, top, bottom) = (80.0, 160.0, 40.0, 60.0);
    let (pw, ph) = (width - left - right, height - top - bottom);
    let series = collect_series(table, plot);
    let xa = Axis::fit(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)), plot.log_x);
    let ya = Axis::fit(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)), plot.log_y);
    let px = |x: f64| left + xa.unit(x) * pw;
    let py = |y: f64| top + (1.0 - ya.unit(y)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        left + pw / 2.0,
        xml_escape(&plot.title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in xa.ticks() {
        let x = px(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            top + ph,
            top + ph + 5.0,
            top + ph + 20.0,
            tick_label(t)
        );
    }
    for t in ya.ticks() {
        let y = py(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{left}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 5.0,
            left - 8.0,
            y + 4.0,
            tick_label(t)
        );
    }
    let scale = |log: bool| if log { " (log)" } else { "" };
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}{}</text>"#,
        left + pw / 2.0,
        height - 15.0,
        xml_escape(plot.x),
        scale(plot.log_x)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}{}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0,
        xml_escape(plot.y_label),
        scale(plot.log_y)
    );
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        if pts.len() > 1 {
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
        }
        for &(x, y) in &ser.points {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, px(x), py(y));
        }
        let ly = top + 10.0 + 18.0 * i as f64;
        let lx = left + pw + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 25.0,
            ly + 4.0,
            xml_escape(ser.name)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Character plot for terminals.
pub fn to_ascii(table: &Table, plot: &Plot) -> String {
    const W: usize = 64;
    const H: usize = 18;
    const MARKS: [char; 6] = ['*', 'o', '+', 'x', '#', '@'];
    let series = collect_series(table, plot);
    let xa = Axis::fit(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)), plot.log_x);
    let ya = Axis::fit(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)), plot.log_y);
    let mut grid = vec![vec![' '; W]; H];
    for (i, ser) in series.iter().enumerate() {
        for &(x, y) in &ser.points {
            let col = (xa.unit(x) * (W - 1) as f64).round() as usize;
            let row = ((1.0 - ya.unit(y)) * (H - 1) as f64).round() as usize;
            grid[row.min(H - 1)][col.min(W - 1)] = MARKS[i % MARKS.len()];
        }
    }
    let bound = |axis: &Axis, v: f64| tick_label(if axis.log { 10f64.powf(v) } else { v });
    let mut out = format!("{}\n", plot.title);
    let _ = writeln!(out, "{} from {} to {}", plot.y_label, bound(&ya, ya.lo), bound(&ya, ya.hi));
    let _ = writeln!(out, "+{}+", "-".repeat(W));
    for row in grid {
        let _ = writeln!(out, "|{}|", row.into_iter().collect::<String>());
    }
    let _ = writeln!(out, "+{}+", "-".repeat(W));
    let _ = writeln!(out, "{} from {} to {}", plot.x, bound(&xa, xa.lo), bound(&xa, xa.hi));
    let scale = |log: bool| if log { "log" } else { "linear" };
    let _ = writeln!(out, "axes: x {}, y {}", scale(plot.log_x), scale(plot.log_y));
    for (i, ser) in series.iter().enumerate() {
        let _ = writeln!(out, "  {} {}", MARKS[i % MARKS.len()], ser.name);
    }
    out
}
