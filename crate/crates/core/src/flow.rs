//! Area-preserving length descent for closed polygons.
//!
//! A step moves every vertex against the length gradient projected onto the
//! tangent space of the constraint `Vol = const` in `R^{2n}`, then (under
//! [`VolumeCorrection::ProjectAndRescale`]) rescales about the centroid so
//! the volume returns exactly to its initial value. Steps that would produce
//! a zero edge, flip the volume sign or increase the length are retried with
//! half the step size.

use serde::Serialize;

use crate::curve::DiscreteCurve;
use crate::error::{CurveError, Result};
use crate::variation::{classify_equilibrium, estimate_kappa, length_gradient_field, volume_gradient_field, EquilibriumReport};
use crate::Vec2;

/// Maximum number of step halvings per step.
pub const MAX_HALVINGS: u32 = 20;

/// Relative slack in the descent test, absorbing rounding near equilibria.
const DESCENT_SLACK: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VolumeCorrection {
    ProjectOnly,
    ProjectAndRescale,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowConfig {
    pub step_size: f64,
    pub max_steps: usize,
    pub grad_tolerance: f64,
    pub volume_correction: VolumeCorrection,
    /// Record a snapshot every this many steps (the first and last are always kept).
    pub record_every: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            step_size: 0.1,
            max_steps: 10_000,
            grad_tolerance: 1e-10,
            volume_correction: VolumeCorrection::ProjectAndRescale,
            record_every: 1,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(CurveError::InvalidArgument(format!("step size must be positive, got {}", self.step_size)));
        }
        if !(self.grad_tolerance > 0.0) {
            return Err(CurveError::InvalidArgument(format!(
                "gradient tolerance must be positive, got {}",
                self.grad_tolerance
            )));
        }
        if self.record_every == 0 {
            return Err(CurveError::InvalidArgument("record_every must be at least 1".into()));
        }
        Ok(())
    }
}

fn dot(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.dot(y)).sum()
}

/// `w = v - (<v, grad Vol> / |grad Vol|^2) grad Vol`.
pub fn project_volume_preserving(curve: &DiscreteCurve, field: &[Vec2]) -> Result<Vec<Vec2>> {
    curve.require_closed()?;
    curve.check_field_len(field.len())?;
    let gv = volume_gradient_field(curve)?;
    let denom = dot(&gv, &gv);
    if denom == 0.0 {
        return Err(CurveError::ZeroVolumeGradient);
    }
    let c = dot(field, &gv) / denom;
    Ok(field.iter().zip(&gv).map(|(v, g)| v - c * g).collect())
}

/// Projected length gradient and its largest vertex norm.
pub fn projected_length_gradient(curve: &DiscreteCurve) -> Result<(Vec<Vec2>, f64)> {
    let g = project_volume_preserving(curve, &length_gradient_field(curve))?;
    let max = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok((g, max))
}

/// What happened in one [`flow_step`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepDiagnostics {
    /// Step size actually used.
    pub step_used: f64,
    pub halvings: u32,
    pub length_before: f64,
    pub length_after: f64,
    pub volume_after: f64,
    /// Max projected gradient at the starting curve.
    pub max_projected_gradient: f64,
    /// Homothety factor applied after the step (1 without rescaling).
    pub scale: f64,
    /// No trial step decreased the length; the curve was returned unchanged.
    pub stalled: bool,
}

enum Trial {
    Accepted(DiscreteCurve, f64, f64),
    ZeroEdge,
    Rejected,
}

fn try_step(curve: &DiscreteCurve, g: &[Vec2], h: f64, target_volume: f64, rescale: bool, length: f64) -> Trial {
    let moved: Vec<Vec2> = curve.points().iter().zip(g).map(|(p, d)| p - h * d).collect();
    let candidate = match DiscreteCurve::new(moved, true, curve.sigma()) {
        Ok(c) => c,
        Err(CurveError::ZeroEdge { .. }) => return Trial::ZeroEdge,
        Err(_) => return Trial::Rejected,
    };
    let (candidate, scale) = if rescale {
        let vol = match candidate.enclosed_volume() {
            Ok(v) => v,
            Err(_) => return Trial::Rejected,
        };
        let ratio = target_volume / vol;
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Trial::Rejected;
        }
        let s = ratio.sqrt();
        let c = candidate.centroid();
        let scaled = candidate.points().iter().map(|p| c + s * (p - c)).collect();
        match DiscreteCurve::new(scaled, true, curve.sigma()) {
            Ok(out) => (out, s),
            Err(CurveError::ZeroEdge { .. }) => return Trial::ZeroEdge,
            Err(_) => return Trial::Rejected,
        }
    } else {
        (candidate, 1.0)
    };
    if candidate.total_length() > length * (1.0 + DESCENT_SLACK) {
        return Trial::Rejected;
    }
    Trial::Accepted(candidate, scale, h)
}

/// One descent step `p' = p - h Pi(grad L)`, followed by the volume
/// correction chosen in `config`.
///
/// Under rescaling the restored volume is `target_volume`; pass the initial
/// volume of the trajectory to prevent drift from accumulating.
pub fn flow_step(curve: &DiscreteCurve, target_volume: f64, config: &FlowConfig) -> Result<(DiscreteCurve, StepDiagnostics)> {
    config.validate()?;
    let (g, max_projected_gradient) = projected_length_gradient(curve)?;
    let length = curve.total_length();
    let rescale = config.volume_correction == VolumeCorrection::ProjectAndRescale;
    let mut h = config.step_size;
    let mut last_zero_edge = false;
    for halvings in 0..=MAX_HALVINGS {
        match try_step(curve, &g, h, target_volume, rescale, length) {
            Trial::Accepted(next, scale, step_used) => {
                let diag = StepDiagnostics {
                    step_used,
                    halvings,
                    length_before: length,
                    length_after: next.total_length(),
                    volume_after: next.enclosed_volume()?,
                    max_projected_gradient,
                    scale,
                    stalled: false,
                };
                return Ok((next, diag));
            }
            Trial::ZeroEdge => last_zero_edge = true,
            Trial::Rejected => last_zero_edge = false,
        }
        h *= 0.5;
    }
    if last_zero_edge {
        return Err(CurveError::StepProducedZeroEdge { halvings: MAX_HALVINGS });
    }
    let diag = StepDiagnostics {
        step_used: 0.0,
        halvings: MAX_HALVINGS,
        length_before: length,
        length_after: length,
        volume_after: curve.enclosed_volume()?,
        max_projected_gradient,
        scale: 1.0,
        stalled: true,
    };
    Ok((curve.clone(), diag))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub step: usize,
    pub curve: DiscreteCurve,
    pub length: f64,
    pub volume: f64,
    pub max_projected_gradient: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum FlowVerdict {
    Converged(EquilibriumReport),
    MaxSteps,
    Degenerated { step: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowTrajectory {
    pub snapshots: Vec<Snapshot>,
    pub verdict: FlowVerdict,
    /// Number of accepted steps.
    pub steps: usize,
}

impl FlowTrajectory {
    pub fn final_curve(&self) -> &DiscreteCurve {
        &self.snapshots.last().expect("trajectory has a snapshot").curve
    }

    pub fn converged(&self) -> bool {
        matches!(self.verdict, FlowVerdict::Converged(_))
    }

    /// Largest `|Vol_i - Vol_0| / |Vol_0|` over the recorded snapshots.
    pub fn max_volume_drift(&self) -> f64 {
        let v0 = self.snapshots[0].volume;
        self.snapshots
            .iter()
            .map(|s| (s.volume - v0).abs() / v0.abs())
            .fold(0.0, f64::max)
    }
}

fn snapshot(step: usize, curve: &DiscreteCurve, volume: f64, gradnorm: f64) -> Snapshot {
    Snapshot {
        step,
        curve: curve.clone(),
        length: curve.total_length(),
        volume,
        max_projected_gradient: gradnorm,
    }
}

/// Iterates [`flow_step`] until the projected gradient drops below
/// `grad_tolerance`, the step budget runs out, or the polygon degenerates.
///
/// On convergence the result is classified by [`classify_equilibrium`] with
/// the least-squares multiplier from [`estimate_kappa`].
pub fn run_flow(curve: &DiscreteCurve, config: &FlowConfig) -> Result<FlowTrajectory> {
    config.validate()?;
    let volume0 = curve.enclosed_volume()?;
    let mut current = curve.clone();
    let mut volume = volume0;
    let (_, mut gradnorm) = projected_length_gradient(&current)?;
    let mut snapshots = vec![snapshot(0, &current, volume, gradnorm)];
    let mut step = 0;

    let verdict = loop {
        if gradnorm < config.grad_tolerance {
            break classify(&current, config.grad_tolerance, step);
        }
        if step >= config.max_steps {
            break FlowVerdict::MaxSteps;
        }
        let (next, diag) = match flow_step(&current, volume0, config) {
            Ok(out) => out,
            Err(e) => break FlowVerdict::Degenerated { step, reason: e.to_string() },
        };
        if diag.stalled {
            break FlowVerdict::Degenerated {
                step,
                reason: format!("no descent after {MAX_HALVINGS} step halvings"),
            };
        }
        current = next;
        volume = diag.volume_after;
        step += 1;
        gradnorm = match projected_length_gradient(&current) {
            Ok((_, g)) => g,
            Err(e) => break FlowVerdict::Degenerated { step, reason: e.to_string() },
        };
        if step % config.record_every == 0 {
            snapshots.push(snapshot(step, &current, volume, gradnorm));
        }
    };
    if snapshots.last().map(|s| s.step) != Some(step) {
        snapshots.push(snapshot(step, &current, volume, gradnorm));
    }
    Ok(FlowTrajectory { snapshots, verdict, steps: step })
}

fn classify(curve: &DiscreteCurve, tol: f64, step: usize) -> FlowVerdict {
    let report = estimate_kappa(curve).and_then(|kappa| classify_equilibrium(curve, kappa, tol));
    match report {
        Ok(r) if r.is_equilibrium => FlowVerdict::Converged(r),
        Ok(r) => FlowVerdict::Degenerated {
            step,
            reason: format!("stationary point rejected as equilibrium (residual {:e})", r.max_residual),
        },
        Err(e) => FlowVerdict::Degenerated { step, reason: e.to_string() },
    }
}
