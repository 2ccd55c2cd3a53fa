//! Vertex normals, parallel curves and the discrete Steiner formula.
//!
//! Moving every vertex along `N_k = (nu_k + nu_{k-1}) / (1 + cos theta_k)`
//! keeps every edge parallel to its original, and the edge lengths scale
//! exactly as `l_k (1 - t kappa(e_k))` with the edge-osculating curvature.
//!
//! On open curves the endpoints are moved along their single edge normal,
//! which is the same rule with a zero turning angle at the ends.

use serde::Serialize;

use crate::curvature::edge_curvature;
use crate::curve::{DiscreteCurve, CUSP_TOLERANCE};
use crate::error::{CurveError, Result};
use crate::Vec2;

/// `|1 - t kappa(e_k)|` at or below this collapses the offset edge.
pub const EDGE_COLLAPSE_TOLERANCE: f64 = 1e-9;

/// How the offset edges are joined at the vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OffsetVariant {
    /// Join the offset edges by a straight segment (doubles the vertex count).
    Segment,
    /// Join by a circular arc (normal cone / Minkowski sum with a disk).
    Arc,
    /// Extend the offset edges until they meet; same vertex count.
    Wedge,
}

impl OffsetVariant {
    pub fn name(self) -> &'static str {
        match self {
            OffsetVariant::Segment => "segment",
            OffsetVariant::Arc => "arc",
            OffsetVariant::Wedge => "wedge",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [OffsetVariant::Segment, OffsetVariant::Arc, OffsetVariant::Wedge]
            .into_iter()
            .find(|v| v.name() == name)
    }
}

/// Vertex normal `N_k = (nu_k + nu_{k-1}) / (1 + cos theta_k)`, with
/// `|N_k| = 1 / cos(theta_k / 2)`.
pub fn vertex_normal(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    curve.check_interior(k)?;
    let nu = curve.edge_normal_unchecked(k);
    let nu_prev = curve.edge_normal_unchecked(curve.prev(k));
    let denom = 1.0 + nu.dot(&nu_prev);
    if denom <= CUSP_TOLERANCE || curve.is_cusp(k) {
        return Err(CurveError::CuspVertex { vertex: k });
    }
    Ok((nu + nu_prev) / denom)
}

/// Vertex tangent `T_k = -R N_k`.
pub fn vertex_tangent(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    let normal = vertex_normal(curve, k)?;
    Ok(-curve.sigma().rotate(normal))
}

/// Length-weighted average of the two edge normals at vertex `k`.
pub fn weighted_vertex_normal(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    curve.check_interior(k)?;
    let prev = curve.prev(k);
    let (l, l_prev) = (curve.edge_lengths()[k], curve.edge_lengths()[prev]);
    Ok((l * curve.edge_normal_unchecked(k) + l_prev * curve.edge_normal_unchecked(prev)) / (l + l_prev))
}

/// Displacement direction of every vertex under the parallel offset.
pub fn offset_directions(curve: &DiscreteCurve) -> Result<Vec<Vec2>> {
    let n = curve.vertex_count();
    (0..n)
        .map(|k| {
            if curve.is_interior(k) {
                vertex_normal(curve, k)
            } else if k == 0 {
                Ok(curve.edge_normal_unchecked(0))
            } else {
                Ok(curve.edge_normal_unchecked(n - 2))
            }
        })
        .collect()
}

/// Edge curvature with a zero turning angle at the endpoints of open curves.
fn steiner_curvature(curve: &DiscreteCurve, k: usize) -> Result<f64> {
    let next = curve.next(k);
    if curve.is_interior(k) && curve.is_interior(next) {
        return edge_curvature(curve, k);
    }
    let half_tan = |v: usize| -> Result<f64> {
        if curve.is_interior(v) {
            Ok((curve.reject_cusp(v)? / 2.0).tan())
        } else {
            Ok(0.0)
        }
    };
    Ok((half_tan(k)? + half_tan(next)?) / curve.edge_lengths()[k])
}

/// Steiner factors `1 - t kappa(e_k)` for every edge.
pub fn steiner_factors(curve: &DiscreteCurve, t: f64) -> Result<Vec<f64>> {
    (0..curve.edge_count())
        .map(|k| Ok(1.0 - t * steiner_curvature(curve, k)?))
        .collect()
}

/// Parallel curve `p_k(t) = p_k + t N_k`.
pub fn parallel_curve(curve: &DiscreteCurve, t: f64) -> Result<DiscreteCurve> {
    let directions = offset_directions(curve)?;
    for (edge, factor) in steiner_factors(curve, t)?.into_iter().enumerate() {
        if factor.abs() <= EDGE_COLLAPSE_TOLERANCE {
            return Err(CurveError::EdgeCollapse { edge, factor });
        }
    }
    let points = curve
        .points()
        .iter()
        .zip(&directions)
        .map(|(p, d)| p + t * d)
        .collect();
    DiscreteCurve::new(points, curve.is_closed(), curve.sigma())
}

/// Per-edge comparison of the Steiner prediction with the actual offset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteinerReport {
    pub t: f64,
    pub predicted_lengths: Vec<f64>,
    pub actual_lengths: Vec<f64>,
    pub max_abs_error: f64,
}

impl SteinerReport {
    pub fn predicted_total(&self) -> f64 {
        self.predicted_lengths.iter().sum()
    }

    pub fn actual_total(&self) -> f64 {
        self.actual_lengths.iter().sum()
    }

    pub fn max_relative_error(&self) -> f64 {
        self.predicted_lengths
            .iter()
            .zip(&self.actual_lengths)
            .map(|(p, a)| (p - a).abs() / a.abs().max(p.abs()))
            .fold(0.0, f64::max)
    }
}

/// Offsets by `t` and compares `|p_{k+1}(t) - p_k(t)|` with `l_k (1 - t kappa(e_k))`.
///
/// Requires every factor `1 - t kappa(e_k)` to be positive: past the first
/// collapse the offset edge reverses and only the signed identity survives.
pub fn steiner_report(curve: &DiscreteCurve, t: f64) -> Result<SteinerReport> {
    let factors = steiner_factors(curve, t)?;
    if let Some((edge, &factor)) = factors
        .iter()
        .enumerate()
        .find(|(_, f)| **f <= EDGE_COLLAPSE_TOLERANCE)
    {
        return Err(CurveError::EdgeCollapse { edge, factor });
    }
    let offset = parallel_curve(curve, t)?;
    let predicted_lengths: Vec<f64> = curve
        .edge_lengths()
        .iter()
        .zip(&factors)
        .map(|(l, f)| l * f)
        .collect();
    let actual_lengths = offset.edge_lengths().to_vec();
    let max_abs_error = predicted_lengths
        .iter()
        .zip(&actual_lengths)
        .map(|(p, a)| (p - a).abs())
        .fold(0.0, f64::max);
    Ok(SteinerReport {
        t,
        predicted_lengths,
        actual_lengths,
        max_abs_error,
    })
}

/// Total length of the offset curve joined by `variant`, using signed
/// turning angles: Segment `L - t sum 2 sin(theta_k / 2)`, Arc
/// `L - t sum theta_k`, Wedge `L - t sum 2 tan(theta_k / 2)`.
pub fn offset_length(curve: &DiscreteCurve, t: f64, variant: OffsetVariant) -> Result<f64> {
    curve.require_closed()?;
    let length = curve.total_length();
    let mut correction = 0.0;
    for k in 0..curve.vertex_count() {
        let theta = curve.turning_angle_unchecked(k);
        correction += match variant {
            OffsetVariant::Segment => 2.0 * (theta / 2.0).sin(),
            OffsetVariant::Arc => theta,
            OffsetVariant::Wedge => 2.0 * (curve.reject_cusp(k)? / 2.0).tan(),
        };
    }
    Ok(length - t * correction)
}

/// Materializes the offset polygon for the polygonal variants; `None` for
/// [`OffsetVariant::Arc`], whose joins are circular.
pub fn offset_polygon(curve: &DiscreteCurve, t: f64, variant: OffsetVariant) -> Result<Option<DiscreteCurve>> {
    match variant {
        OffsetVariant::Arc => Ok(None),
        OffsetVariant::Wedge => parallel_curve(curve, t).map(Some),
        OffsetVariant::Segment => {
            curve.require_closed()?;
            let mut points = Vec::with_capacity(2 * curve.vertex_count());
            for k in 0..curve.vertex_count() {
                let p = curve.point(k);
                points.push(p + t * curve.edge_normal_unchecked(curve.prev(k)));
                points.push(p + t * curve.edge_normal_unchecked(k));
            }
            DiscreteCurve::new(points, true, curve.sigma()).map(Some)
        }
    }
}

/// Residual of the edge Frenet relation
/// `(N_{k+1} - N_k) / l_k + kappa(e_k) t_k`, identically zero.
pub fn frenet_edge_residual(curve: &DiscreteCurve, k: usize) -> Result<Vec2> {
    let kappa = edge_curvature(curve, k).map_err(|e| match e {
        CurveError::CuspAdjacent { edge } => {
            let vertex = if curve.is_cusp(edge) { edge } else { curve.next(edge) };
            CurveError::CuspVertex { vertex }
        }
        other => other,
    })?;
    let n_here = vertex_normal(curve, k)?;
    let n_next = vertex_normal(curve, curve.next(k))?;
    Ok((n_next - n_here) / curve.edge_lengths()[k] + kappa * curve.unit_tangent(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{regular_polygon, RegularPolygonSpec, Sigma};
    use crate::variation::length_gradient;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn square() -> DiscreteCurve {
        regular_polygon(&RegularPolygonSpec::new(4, 1, 1.0)).unwrap()
    }

    #[test]
    fn square_vertex_frame() {
        let sq = square();
        let n0 = vertex_normal(&sq, 0).unwrap();
        assert!((n0 - Vec2::new(SQRT_2, 0.0)).norm() < 1e-15);
        let t0 = vertex_tangent(&sq, 0).unwrap();
        assert!((t0 - Vec2::new(0.0, SQRT_2)).norm() < 1e-15);
        let w0 = weighted_vertex_normal(&sq, 0).unwrap();
        assert!((w0 - Vec2::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        // N_k = -grad L / sin(theta_k)
        let theta = sq.turning_angle(0).unwrap();
        assert!((n0 + length_gradient(&sq, 0).unwrap() / theta.sin()).norm() < 1e-15);
    }

    #[test]
    fn straight_and_cusp_vertices() {
        let line = DiscreteCurve::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)], false, Sigma::Negative).unwrap();
        let n = vertex_normal(&line, 1).unwrap();
        assert!((n - Vec2::new(0.0, -1.0)).norm() < 1e-15);
        let t = vertex_tangent(&line, 1).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-15 && t.dot(&n).abs() < 1e-15);
        assert!((weighted_vertex_normal(&line, 1).unwrap() - n).norm() < 1e-15);
        let back = DiscreteCurve::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)], false, Sigma::Negative).unwrap();
        assert_eq!(vertex_normal(&back, 1).unwrap_err(), CurveError::CuspVertex { vertex: 1 });
    }

    #[test]
    fn square_offsets() {
        let sq = square();
        let off = parallel_curve(&sq, 0.5).unwrap();
        assert!((off.point(0) - Vec2::new(1.0 + SQRT_2 / 2.0, 0.0)).norm() < 1e-15);
        for l in off.edge_lengths() {
            assert!((l - SQRT_2 * (1.0 + SQRT_2 * 0.5)).abs() < 1e-14);
        }
        assert_eq!(parallel_curve(&sq, 0.0).unwrap(), sq);
        assert!(matches!(
            parallel_curve(&sq, -FRAC_1_SQRT_2).unwrap_err(),
            CurveError::EdgeCollapse { .. }
        ));
        let rep = steiner_report(&sq, 0.3).unwrap();
        for (p, a) in rep.predicted_lengths.iter().zip(&rep.actual_lengths) {
            assert!((p - SQRT_2 * (1.0 + SQRT_2 * 0.3)).abs() < 1e-14);
            assert!((p - a).abs() < 1e-14);
        }
        assert!(rep.max_abs_error < 1e-14);
        let rep0 = steiner_report(&sq, 0.0).unwrap();
        assert_eq!(rep0.predicted_lengths, sq.edge_lengths());
        assert_eq!(rep0.actual_lengths, sq.edge_lengths());
    }

    #[test]
    fn offset_lengths_of_square() {
        let sq = square();
        let l = 4.0 * SQRT_2;
        let arc = offset_length(&sq, 1.0, OffsetVariant::Arc).unwrap();
        assert!((arc - (l + 2.0 * PI)).abs() < 1e-13);
        let seg = offset_length(&sq, 1.0, OffsetVariant::Segment).unwrap();
        assert!((seg - 2.0 * l).abs() < 1e-13);
        let wedge = offset_length(&sq, 1.0, OffsetVariant::Wedge).unwrap();
        assert!((wedge - (l + 8.0)).abs() < 1e-13);
        let steiner = steiner_report(&sq, 1.0).unwrap().predicted_total();
        assert!((wedge - steiner).abs() < 1e-13);
        let segment_poly = offset_polygon(&sq, 1.0, OffsetVariant::Segment).unwrap().unwrap();
        assert_eq!(segment_poly.vertex_count(), 8);
        assert!((segment_poly.total_length() - seg).abs() < 1e-13);
        assert!(offset_polygon(&sq, 1.0, OffsetVariant::Arc).unwrap().is_none());
    }

    #[test]
    fn open_curve_offsets_keep_edges_parallel() {
        let path = DiscreteCurve::from_xy(&[(0.0, 0.0), (1.0, 0.2), (2.0, -0.1), (2.5, 1.0)], false, Sigma::Negative).unwrap();
        let t = 0.05;
        let off = parallel_curve(&path, t).unwrap();
        for k in 0..path.edge_count() {
            let nu = path.edge_normal(k).unwrap();
            assert!(off.edge_vector(k).dot(&nu).abs() < 1e-15);
        }
        let rep = steiner_report(&path, t).unwrap();
        assert!(rep.max_abs_error < 1e-14);
    }

    #[test]
    fn frenet_on_square_and_line() {
        let sq = square();
        for k in 0..4 {
            assert!(frenet_edge_residual(&sq, k).unwrap().norm() < 1e-14);
        }
        let line = DiscreteCurve::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.5, 0.0)], false, Sigma::Negative).unwrap();
        assert_eq!(frenet_edge_residual(&line, 1).unwrap(), Vec2::zeros());
    }

    #[test]
    fn variant_names() {
        for v in [OffsetVariant::Segment, OffsetVariant::Arc, OffsetVariant::Wedge] {
            assert_eq!(OffsetVariant::from_name(v.name()), Some(v));
        }
    }
}
