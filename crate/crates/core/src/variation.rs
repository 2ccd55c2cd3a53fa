//! First variations of length and enclosed area, and the equilibrium
//! characterization for `L + kappa Vol`.
//!
//! The critical points of `L + kappa Vol` (for `kappa != 0`) among closed
//! polygons are exactly the regular polygons with `kappa l_0 = 2 tan(theta_0 / 2)`.
//! [`classify_equilibrium`] tests the residual `A_k` and then checks that the
//! uniform edge length and turning angle actually follow.

use serde::Serialize;

use crate::curve::DiscreteCurve;
use crate::error::{CurveError, Result};
use crate::Vec2;

/// The functional whose first variation is taken.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Functional {
    Length,
    Volume,
    LengthPlusKappaVolume(f64),
}

/// `grad_{p_k} L = -(p_{k+1} - p_k) / l_k + (p_k - p_{k-1}) / l_{k-1}` at an
/// interior vertex.
pub fn length_gradient(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    curve.check_interior(k)?;
    Ok(curve.unit_tangent(curve.prev(k)) - curve.unit_tangent(k))
}

/// The same gradient written as `R (nu_k - nu_{k-1})`.
pub fn length_gradient_from_normals(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    curve.check_interior(k)?;
    let nu = curve.edge_normal_unchecked(k);
    let nu_prev = curve.edge_normal_unchecked(curve.prev(k));
    Ok(curve.sigma().rotate(nu - nu_prev))
}

/// Full length gradient, one vector per vertex. Endpoints of open curves get
/// their one-sided partial derivatives.
pub fn length_gradient_field(curve: &DiscreteCurve) -> Vec<Vec2> {
    let n = curve.vertex_count();
    let mut out = vec![Vec2::zeros(); n];
    for k in 0..curve.edge_count() {
        let t = curve.unit_tangent(k);
        out[k] -= t;
        out[curve.next(k)] += t;
    }
    out
}

/// `grad_{p_k} Vol = (1/2) R (p_{k+1} - p_{k-1})` on a closed curve.
pub fn volume_gradient(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    curve.require_closed()?;
    curve.check_interior(k)?;
    Ok(0.5 * curve.sigma().rotate(curve.point(curve.next(k)) - curve.point(curve.prev(k))))
}

pub fn volume_gradient_field(curve: &DiscreteCurve) -> Result<Vec<Vec2>> {
    curve.require_closed()?;
    Ok((0..curve.vertex_count())
        .map(|k| 0.5 * curve.sigma().rotate(curve.point(curve.next(k)) - curve.point(curve.prev(k))))
        .collect())
}

/// Gradient field of the selected functional.
pub fn gradient_field(curve: &DiscreteCurve, functional: Functional) -> Result<Vec<Vec2>> {
    match functional {
        Functional::Length => Ok(length_gradient_field(curve)),
        Functional::Volume => volume_gradient_field(curve),
        Functional::LengthPlusKappaVolume(kappa) => {
            let vol = volume_gradient_field(curve)?;
            Ok(length_gradient_field(curve)
                .into_iter()
                .zip(vol)
                .map(|(g, v)| g + kappa * v)
                .collect())
        }
    }
}

pub(crate) fn check_variation_field(curve: &DiscreteCurve, field: &[Vec2]) -> Result<()> {
    curve.check_field_len(field.len())?;
    if !curve.is_closed() {
        let last = curve.vertex_count() - 1;
        for vertex in [0, last] {
            if field[vertex] != Vec2::zeros() {
                return Err(CurveError::BoundaryNotFixed { vertex });
            }
        }
    }
    Ok(())
}

/// `delta F = sum_k <grad_{p_k} F, v_k>`.
pub fn first_variation(curve: &DiscreteCurve, field: &[Vec2], functional: Functional) -> Result<f64> {
    check_variation_field(curve, field)?;
    let grad = gradient_field(curve, functional)?;
    Ok(grad.iter().zip(field).map(|(g, v)| g.dot(v)).sum())
}

/// Euler-Lagrange residuals `A_k = (nu_k - nu_{k-1}) + (kappa / 2)(p_{k+1} - p_{k-1})`.
///
/// `R A_k = grad_{p_k} L + kappa grad_{p_k} Vol`, so the field vanishes
/// exactly at critical points of `L + kappa Vol`.
pub fn equilibrium_residual(curve: &DiscreteCurve, kappa: f64) -> Result<Vec<Vec2>> {
    curve.require_closed()?;
    Ok((0..curve.vertex_count())
        .map(|k| {
            let (prev, next) = (curve.prev(k), curve.next(k));
            curve.edge_normal_unchecked(k) - curve.edge_normal_unchecked(prev)
                + 0.5 * kappa * (curve.point(next) - curve.point(prev))
        })
        .collect())
}

/// Edge quantities `c_k = nu_k + (kappa / 2)(p_{k+1} + p_k)`, constant
/// exactly at equilibria.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConservationLaw {
    pub vectors: Vec<Vec2>,
    pub mean: Vec2,
    /// `max_k |c_k - mean|`.
    pub spread: f64,
}

pub fn conservation_vectors(curve: &DiscreteCurve, kappa: f64) -> Result<ConservationLaw> {
    curve.require_closed()?;
    let vectors: Vec<Vec2> = (0..curve.edge_count())
        .map(|k| curve.edge_normal_unchecked(k) + 0.5 * kappa * (curve.point(curve.next(k)) + curve.point(k)))
        .collect();
    let mean = vectors.iter().fold(Vec2::zeros(), |acc, c| acc + c) / vectors.len() as f64;
    let spread = vectors.iter().map(|c| (c - mean).norm()).fold(0.0, f64::max);
    Ok(ConservationLaw {
        vectors,
        mean,
        spread,
    })
}

/// Result of [`classify_equilibrium`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub is_equilibrium: bool,
    pub max_residual: f64,
    /// Mean edge length.
    pub l0: f64,
    /// Mean turning angle.
    pub theta0: f64,
    pub kappa: f64,
    pub n: usize,
    /// Turning number, when defined.
    pub winding: Option<i64>,
    pub length_spread: f64,
    pub angle_spread: f64,
    pub tolerance_used: f64,
    /// `sigma` of the classified curve, as +1 / -1.
    pub sigma: i32,
}

/// Residual scale `max(1, |kappa| diam)` used by [`classify_equilibrium`].
pub fn residual_scale(curve: &DiscreteCurve, kappa: f64) -> f64 {
    1.0f64.max(kappa.abs() * curve.diameter())
}

/// Decides whether `curve` is critical for `L + kappa Vol`.
///
/// The curve is an equilibrium when `max_k |A_k| <= tol * scale`. In that
/// case the uniformity of `l_k` and `theta_k` is checked against the bound
/// the residual implies; a violation means the numerics are broken and is
/// reported as [`CurveError::InternalInconsistency`].
pub fn classify_equilibrium(curve: &DiscreteCurve, kappa: f64, tol: f64) -> Result<EquilibriumReport> {
    curve.require_closed()?;
    if kappa == 0.0 {
        return Err(CurveError::KappaZero);
    }
    if !(tol > 0.0) {
        return Err(CurveError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let residual = equilibrium_residual(curve, kappa)?;
    let max_residual = residual.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let scale = residual_scale(curve, kappa);
    let is_equilibrium = max_residual <= tol * scale;

    let n = curve.vertex_count();
    let lengths = curve.edge_lengths();
    let thetas = curve.turning_angles();
    let l0 = lengths.iter().sum::<f64>() / n as f64;
    let theta0 = thetas.iter().sum::<f64>() / n as f64;
    let length_spread = lengths.iter().map(|l| (l - l0).abs()).fold(0.0, f64::max);
    let angle_spread = thetas.iter().map(|t| (t - theta0).abs()).fold(0.0, f64::max);
    let winding = curve.turning_number().ok();

    if is_equilibrium {
        // <A_k, nu_{k-1}> = sin(theta_k)(kappa l_k / 2 - tan(theta_k / 2)) and
        // <A_k, nu_k> = sin(theta_k)(tan(theta_k / 2) - kappa l_{k-1} / 2), so a
        // residual r bounds |l_k - l_{k-1}| by 4 r / (|kappa| |sin theta_k|).
        let min_sin = thetas.iter().map(|t| t.sin().abs()).fold(f64::INFINITY, f64::min);
        let slack = 1e-12 * (1.0 + l0 + curve.diameter());
        let length_bound = n as f64 * 4.0 * max_residual / (kappa.abs() * min_sin) + slack;
        let tan_bound = 0.5 * kappa.abs() * length_bound + 2.0 * max_residual / min_sin;
        let angle_bound = 4.0 * tan_bound + slack;
        if !(min_sin > 0.0) || length_spread > 10.0 * length_bound || angle_spread > 10.0 * angle_bound {
            return Err(CurveError::InternalInconsistency(format!(
                "residual {max_residual:e} accepted but edge spread {length_spread:e} / angle spread \
                 {angle_spread:e} exceed the implied bounds {length_bound:e} / {angle_bound:e}"
            )));
        }
        let relation = (kappa * l0 - 2.0 * (theta0 / 2.0).tan()).abs();
        if relation > 10.0 * (kappa.abs() * length_bound + tan_bound * 2.0) + slack {
            return Err(CurveError::InternalInconsistency(format!(
                "kappa l0 = 2 tan(theta0 / 2) violated by {relation:e}"
            )));
        }
    }

    Ok(EquilibriumReport {
        is_equilibrium,
        max_residual,
        l0,
        theta0,
        kappa,
        n,
        winding,
        length_spread,
        angle_spread,
        tolerance_used: tol,
        sigma: curve.sigma().as_i32(),
    })
}

/// Lagrange multiplier `kappa = -<grad L, grad Vol> / |grad Vol|^2` that best
/// balances the two gradients in the least squares sense.
pub fn estimate_kappa(curve: &DiscreteCurve) -> Result<f64> {
    let gl = length_gradient_field(curve);
    let gv = volume_gradient_field(curve)?;
    let denom: f64 = gv.iter().map(|v| v.norm_squared()).sum();
    if denom == 0.0 {
        return Err(CurveError::ZeroVolumeGradient);
    }
    let num: f64 = gl.iter().zip(&gv).map(|(a, b)| a.dot(b)).sum();
    Ok(-num / denom)
}
