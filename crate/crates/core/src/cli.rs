//! Command implementations behind the `dcurve` binary.
//!
//! Each command returns its outputs as strings; the binary decides where
//! they go. Numbers come straight from library operations and are only
//! formatted here.

use std::f64::consts::PI;

use crate::curvature::{edge_curvature, vertex_curvature, LineElementScheme};
use crate::curve::{check_winding, regular_polygon, DiscreteCurve, RegularPolygonSpec, Sigma};
use crate::error::CurveError;
use crate::flow::{run_flow, FlowConfig, FlowVerdict};
use crate::io::{curve_to_json, fmt_f64, fmt_opt, CsvTable, IoError, SvgPlot};
use crate::offsets::{offset_length, offset_polygon, steiner_report, OffsetVariant};
use crate::stability::{instability_certificate, jacobi_spectrum};
use crate::variation::{classify_equilibrium, estimate_kappa};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// Failure with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        let code = if e.is_degeneracy() { EXIT_DEGENERATE } else { EXIT_INPUT };
        Self { code, message: e.to_string() }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Curve(c) => c.into(),
            other => Self::input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Outputs of one command.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CommandOutput {
    /// Primary data (CSV or JSON).
    pub data: String,
    pub svg: Option<String>,
    /// Structured JSON report.
    pub report: Option<String>,
    /// Human-readable diagnostics for stderr.
    pub messages: Vec<String>,
}

pub fn generate(n: usize, m: usize, radius: f64, phase: f64, sigma: Sigma) -> CliResult<CommandOutput> {
    let spec = RegularPolygonSpec::new(n, m, radius).with_phase(phase).with_sigma(sigma);
    let curve = regular_polygon(&spec)?;
    Ok(CommandOutput {
        data: curve_to_json(&curve),
        messages: vec![format!("generated regular polygon n={n} m={m} a={radius}")],
        ..Default::default()
    })
}

pub struct AnalyzeOptions {
    pub schemes: Vec<LineElementScheme>,
    pub kappa: Option<f64>,
    pub tolerance: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            schemes: LineElementScheme::NAMED.to_vec(),
            kappa: None,
            tolerance: 1e-9,
        }
    }
}

fn column_name(scheme: &LineElementScheme) -> String {
    format!("kappa_{}", scheme.name().replace('-', "_"))
}

/// Per-vertex table and, for closed curves, the equilibrium verdict.
pub fn analyze(curve: &DiscreteCurve, options: &AnalyzeOptions) -> CliResult<CommandOutput> {
    let mut header = vec!["k".to_string(), "l_k".into(), "theta_k".into()];
    header.extend(options.schemes.iter().map(column_name));
    header.push("kappa_edge".into());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = CsvTable::new(&header);
    let mut messages = Vec::new();

    for &k in &curve.cusp_vertices() {
        messages.push(format!("warning: vertex {k} is a cusp"));
    }
    for k in 0..curve.vertex_count() {
        let mut row = vec![k.to_string()];
        row.push(fmt_opt((k < curve.edge_count()).then(|| curve.edge_lengths()[k])));
        row.push(fmt_opt(curve.turning_angle(k).ok()));
        for scheme in &options.schemes {
            row.push(fmt_opt(vertex_curvature(curve, scheme, k).ok()));
        }
        row.push(fmt_opt(edge_curvature(curve, k).ok()));
        table.row(row);
    }

    let mut report = None;
    if curve.is_closed() {
        let kappa = match options.kappa {
            Some(k) => k,
            None => {
                let k = estimate_kappa(curve)?;
                messages.push(format!("kappa (estimated): {}", fmt_f64(k)));
                k
            }
        };
        let r = classify_equilibrium(curve, kappa, options.tolerance)?;
        messages.push(format!("kappa: {}", fmt_f64(r.kappa)));
        messages.push(format!("equilibrium: {}", if r.is_equilibrium { "yes" } else { "no" }));
        messages.push(format!("max residual: {}", fmt_f64(r.max_residual)));
        if let Some(w) = r.winding {
            messages.push(format!("turning number: {w}"));
        }
        report = Some(serde_json::to_string_pretty(&r).expect("report serializes") + "\n");
    } else if options.kappa.is_some() {
        messages.push("open curve: equilibrium classification skipped".into());
    }
    Ok(CommandOutput {
        data: table.finish(),
        svg: None,
        report,
        messages,
    })
}

/// Offset family for the given distances.
pub fn offset(curve: &DiscreteCurve, ts: &[f64], variant: OffsetVariant) -> CliResult<CommandOutput> {
    let mut table = CsvTable::new(&["t", "variant", "predicted_length", "actual_length", "max_edge_error", "status"]);
    let mut plot = SvgPlot::new();
    plot.curve(curve, true);
    let mut messages = Vec::new();
    if variant == OffsetVariant::Arc {
        plot.note("arc offsets are not polygonal; lengths only, curves omitted");
    }
    for &t in ts {
        let predicted = offset_length(curve, t, variant)?;
        let polygon = if t == 0.0 {
            Ok(Some(curve.clone()))
        } else {
            offset_polygon(curve, t, variant)
        };
        let (actual, status) = match polygon {
            Ok(p) => (p.as_ref().map(DiscreteCurve::total_length), "ok".to_string()),
            Err(CurveError::EdgeCollapse { edge, .. }) => {
                messages.push(format!("t={t}: edge {edge} collapses"));
                (None, "edge-collapse".to_string())
            }
            Err(CurveError::ZeroEdge { edge }) => {
                messages.push(format!("t={t}: offset edge {edge} has zero length"));
                (None, "zero-edge".to_string())
            }
            Err(e) => return Err(e.into()),
        };
        let edge_error = match variant {
            OffsetVariant::Wedge if status == "ok" => Some(steiner_report(curve, t)?.max_abs_error),
            _ => None,
        };
        if variant != OffsetVariant::Arc && status == "ok" && t != 0.0 {
            if let Some(p) = offset_polygon(curve, t, variant)? {
                plot.curve(&p, false);
            }
        }
        table.row([
            fmt_f64(t),
            variant.name().to_string(),
            fmt_f64(predicted),
            fmt_opt(actual),
            fmt_opt(edge_error),
            status,
        ]);
    }
    Ok(CommandOutput {
        data: table.finish(),
        svg: Some(plot.render()),
        report: None,
        messages,
    })
}

/// Which windings a stability sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindingRule {
    All,
    /// `m = 1` and its mirror `m = n - 1`.
    Convex,
    /// `2 <= m <= n - 2`.
    Star,
    Exact(usize),
}

impl std::str::FromStr for WindingRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "convex" => Ok(Self::Convex),
            "star" => Ok(Self::Star),
            _ => s
                .parse::<usize>()
                .map(Self::Exact)
                .map_err(|_| format!("expected all, convex, star or an integer, got `{s}`")),
        }
    }
}

impl WindingRule {
    fn windings(self, n: usize) -> Vec<usize> {
        match self {
            Self::All => (1..n).collect(),
            Self::Convex => vec![1, n - 1],
            Self::Star => (2..n.saturating_sub(1)).collect(),
            Self::Exact(m) => vec![m],
        }
    }
}

/// Spectral table for regular polygons with `n` in `n_min..=n_max`.
pub fn stability(n_min: usize, n_max: usize, rule: WindingRule) -> CliResult<CommandOutput> {
    if n_min < 3 || n_min > n_max {
        return Err(CliError::input(format!("invalid n range {n_min}..{n_max} (need 3 <= min <= max)")));
    }
    let mut table = CsvTable::new(&["n", "m", "alpha", "min_lambda", "morse_index", "certificate_coefficient"]);
    let mut messages = vec!["certificate_coefficient is the second variation per unit sum psi_k^2 for psi_k = cos(2 pi k / n), a = 1".to_string()];
    for n in n_min..=n_max {
        for m in rule.windings(n) {
            if 2 * m == n {
                messages.push(format!("skipping n={n} m={m}: m/n = 1/2"));
                continue;
            }
            if let Err(e) = check_winding(n, m) {
                messages.push(format!("skipping n={n} m={m}: {e}"));
                continue;
            }
            let spectrum = jacobi_spectrum(n, m)?;
            let certificate = instability_certificate(n, m, 1.0)?;
            table.row([
                n.to_string(),
                m.to_string(),
                fmt_f64(spectrum.alpha),
                fmt_f64(spectrum.min_eigenvalue),
                spectrum.morse_index.to_string(),
                fmt_f64(certificate.coefficient),
            ]);
        }
    }
    Ok(CommandOutput {
        data: table.finish(),
        messages,
        ..Default::default()
    })
}

/// Runs the area-preserving descent and reports the trajectory.
pub fn flow(curve: &DiscreteCurve, config: &FlowConfig) -> CliResult<CommandOutput> {
    let trajectory = run_flow(curve, config)?;
    let mut table = CsvTable::new(&["step", "length", "volume", "gradnorm"]);
    for s in &trajectory.snapshots {
        table.row([
            s.step.to_string(),
            fmt_f64(s.length),
            fmt_f64(s.volume),
            fmt_f64(s.max_projected_gradient),
        ]);
    }

    let mut plot = SvgPlot::new();
    let frames = trajectory.snapshots.len();
    let stride = frames.div_ceil(50).max(1);
    for (i, s) in trajectory.snapshots.iter().enumerate() {
        if i % stride == 0 && i + 1 < frames {
            plot.faint_curve(&s.curve, "#7f7f7f", 0.35);
        }
    }
    plot.curve(&trajectory.snapshots[0].curve, true);
    plot.curve(trajectory.final_curve(), true);

    let mut messages = Vec::new();
    let svg = Some(plot.render());
    let data = table.finish();
    match &trajectory.verdict {
        FlowVerdict::Converged(r) => {
            messages.push(format!("converged at step {}", trajectory.steps));
            if let Some(w) = r.winding {
                let m = w.unsigned_abs() as usize;
                let radius = r.l0 / (2.0 * (PI * m as f64 / r.n as f64).sin());
                messages.push(format!(
                    "regular polygon: n={} m={m} l0={} a={} kappa={}",
                    r.n,
                    fmt_f64(r.l0),
                    fmt_f64(radius),
                    fmt_f64(r.kappa)
                ));
            }
        }
        FlowVerdict::MaxSteps => {
            messages.push(format!(
                "not converged after {} steps (gradnorm {})",
                trajectory.steps,
                fmt_f64(trajectory.snapshots.last().map_or(f64::NAN, |s| s.max_projected_gradient))
            ));
        }
        FlowVerdict::Degenerated { step, reason } => {
            return Err(CliError {
                code: EXIT_DEGENERATE,
                message: format!("degenerated at step {step}: {reason}"),
            });
        }
    }
    Ok(CommandOutput {
        data,
        svg,
        report: None,
        messages,
    })
}
