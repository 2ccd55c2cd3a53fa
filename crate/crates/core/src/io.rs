//! Curve files, CSV tables and SVG figures.
//!
//! Output is deterministic: floats in CSV use 17 significant digits in
//! scientific notation, SVG coordinates a fixed number of decimals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{DiscreteCurve, Sigma};
use crate::error::CurveError;
use crate::Vec2;

pub const CURVE_FILE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// On-disk representation of a curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub version: u32,
    pub closed: bool,
    pub sigma: i32,
    pub points: Vec<[f64; 2]>,
}

impl CurveFile {
    pub fn from_curve(curve: &DiscreteCurve) -> Self {
        Self {
            version: CURVE_FILE_VERSION,
            closed: curve.is_closed(),
            sigma: curve.sigma().as_i32(),
            points: curve.points().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn to_curve(&self) -> Result<DiscreteCurve, IoError> {
        if self.version != CURVE_FILE_VERSION {
            return Err(field_error("version", format!("unsupported version {}", self.version)));
        }
        let sigma = Sigma::from_i32(self.sigma).ok_or_else(|| field_error("sigma", format!("must be +1 or -1, got {}", self.sigma)))?;
        for (i, p) in self.points.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(field_error(&format!("points[{i}]"), "coordinates must be finite".into()));
            }
        }
        let points = self.points.iter().map(|p| Vec2::new(p[0], p[1])).collect();
        DiscreteCurve::new(points, self.closed, sigma).map_err(|e| match e {
            CurveError::ZeroEdge { edge } => field_error(&format!("points[{edge}]"), e.to_string()),
            other => IoError::Curve(other),
        })
    }
}

fn field_error(field: &str, message: String) -> IoError {
    IoError::Field {
        field: field.to_string(),
        message,
    }
}

pub fn parse_curve(text: &str) -> Result<DiscreteCurve, IoError> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_curve()
}

pub fn read_curve(path: &std::path::Path) -> Result<DiscreteCurve, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_curve(&text)
}

/// Pretty-printed JSON with a trailing newline.
pub fn curve_to_json(curve: &DiscreteCurve) -> String {
    let mut s = serde_json::to_string_pretty(&CurveFile::from_curve(curve)).expect("curve file serializes");
    s.push('\n');
    s
}

/// `x` with 17 significant digits; negative zero prints as zero.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), fmt_f64)
}

/// Minimal CSV table writer.
#[derive(Clone, Debug, Default)]
pub struct CsvTable {
    out: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut t = Self::default();
        t.row(header.iter().map(|s| s.to_string()));
        t
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let line: Vec<String> = cells.into_iter().collect();
        self.out.push_str(&line.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

struct Path {
    points: Vec<Vec2>,
    closed: bool,
    color: String,
    opacity: f64,
    markers: bool,
}

/// Overlay of polygonal curves in a single SVG document.
///
/// The viewBox is the union bounding box padded by 10% of its larger side,
/// with the y axis pointing up; vertex markers have radius 1% of the
/// bounding box diagonal.
#[derive(Default)]
pub struct SvgPlot {
    paths: Vec<Path>,
    notes: Vec<String>,
}

impl SvgPlot {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a curve in the next palette color.
    pub fn curve(&mut self, curve: &DiscreteCurve, markers: bool) -> &mut Self {
        let color = PALETTE[self.paths.len() % PALETTE.len()].to_string();
        self.paths.push(Path {
            points: curve.points().to_vec(),
            closed: curve.is_closed(),
            color,
            opacity: 1.0,
            markers,
        });
        self
    }

    /// Adds a curve with explicit color and opacity, without markers.
    pub fn faint_curve(&mut self, curve: &DiscreteCurve, color: &str, opacity: f64) -> &mut Self {
        self.paths.push(Path {
            points: curve.points().to_vec(),
            closed: curve.is_closed(),
            color: color.to_string(),
            opacity,
            markers: false,
        });
        self
    }

    /// Text emitted as an XML comment.
    pub fn note(&mut self, text: &str) -> &mut Self {
        self.notes.push(text.replace("--", "-"));
        self
    }

    pub fn render(&self) -> String {
        let (mut lo, mut hi) = (Vec2::repeat(f64::INFINITY), Vec2::repeat(f64::NEG_INFINITY));
        for p in self.paths.iter().flat_map(|p| &p.points) {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        if self.paths.is_empty() {
            lo = Vec2::zeros();
            hi = Vec2::repeat(1.0);
        }
        let size = hi - lo;
        let extent = size.x.max(size.y).max(1e-12);
        let pad = 0.1 * extent;
        let diag = size.norm().max(1e-12);
        let marker = 0.01 * diag;
        let stroke = 0.004 * diag;
        let f = |x: f64| {
            let s = format!("{x:.6}");
            if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
                "0.000000".to_string()
            } else {
                s
            }
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
            f(lo.x - pad),
            f(-hi.y - pad),
            f(size.x + 2.0 * pad),
            f(size.y + 2.0 * pad)
        );
        for note in &self.notes {
            let _ = writeln!(out, "<!-- {note} -->");
        }
        for path in &self.paths {
            let pts: Vec<String> = path.points.iter().map(|p| format!("{},{}", f(p.x), f(-p.y))).collect();
            let tag = if path.closed { "polygon" } else { "polyline" };
            let _ = writeln!(
                out,
                "<{tag} points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"{}\"/>",
                pts.join(" "),
                path.color,
                f(stroke),
                f(path.opacity)
            );
            if path.markers {
                for p in &path.points {
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
                        f(p.x),
                        f(-p.y),
                        f(marker),
                        path.color
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}
