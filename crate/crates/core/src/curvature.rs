//! Discrete curvature with pluggable vertex line elements.
//!
//! A polygon has no canonical length element at its vertices. Choosing a
//! positive weight `L_k` per vertex turns the length gradient into a
//! curvature vector `N~_k = (t_k - t_{k-1}) / L_k` and a signed curvature
//! `kappa(p_k) = 2 sin(theta_k / 2) / L_k`. The classical discrete
//! curvatures are recovered by particular choices of `L_k`, listed in
//! [`LineElementScheme`].
//!
//! The same weights define the vertex Laplacian
//! `(Delta psi)_k = (grad psi_k - grad psi_{k-1}) / L_k` on top of the edge
//! gradient `grad psi_k = (psi_{k+1} - psi_k) / l_k`.

use crate::curve::DiscreteCurve;
use crate::error::{CurveError, Result};
use crate::Vec2;

/// Relative spread of edge lengths tolerated by [`LineElementScheme::Arclength`].
pub const ARCLENGTH_UNIFORMITY: f64 = 1e-9;

/// Choice of vertex line element `L_k`.
#[derive(Clone, Debug, PartialEq)]
pub enum LineElementScheme {
    /// Vertex osculating circle: `L_k = |p_{k+1} - p_{k-1}| / (2 cos(theta_k / 2))`.
    VertexOsculating,
    /// Arclength-parametrized curves: `L_k = ((l_k + l_{k-1}) / 2) cos(theta_k / 2)`;
    /// only valid when all edges have the same length.
    Arclength,
    /// Hatakeyama's curvature: `L_k = l_{k-1}`.
    Hatakeyama,
    /// Half the star length: `L_k = (l_k + l_{k-1}) / 2`.
    HalfEdgeSum,
    /// User supplied weights, one per vertex (entries at boundary vertices of
    /// open curves are ignored).
    Custom(Vec<f64>),
}

impl LineElementScheme {
    /// The four named schemes.
    pub const NAMED: [LineElementScheme; 4] = [
        LineElementScheme::VertexOsculating,
        LineElementScheme::Arclength,
        LineElementScheme::Hatakeyama,
        LineElementScheme::HalfEdgeSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LineElementScheme::VertexOsculating => "vertex-osculating",
            LineElementScheme::Arclength => "arclength",
            LineElementScheme::Hatakeyama => "hatakeyama",
            LineElementScheme::HalfEdgeSum => "half-edge-sum",
            LineElementScheme::Custom(_) => "custom",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::NAMED.iter().find(|s| s.name() == name).cloned()
    }
}

fn inapplicable(scheme: &LineElementScheme, reason: String) -> CurveError {
    CurveError::SchemeInapplicable {
        scheme: scheme.name(),
        reason,
    }
}

/// Checks that all edge lengths agree within [`ARCLENGTH_UNIFORMITY`].
pub fn is_uniform(curve: &DiscreteCurve) -> bool {
    let lengths = curve.edge_lengths();
    let mean = lengths.iter().sum::<f64>() / lengths.len() as f64;
    lengths
        .iter()
        .all(|l| (l - mean).abs() / mean < ARCLENGTH_UNIFORMITY)
}

/// Line element `L_k` at interior vertex `k`.
pub fn line_element(curve: &DiscreteCurve, scheme: &LineElementScheme, k: usize) -> Result<f64> {
    curve.check_interior(k)?;
    let l_next = curve.edge_lengths()[k];
    let l_prev = curve.edge_lengths()[curve.prev(k)];
    let value = match scheme {
        LineElementScheme::VertexOsculating => {
            let theta = curve.turning_angle_unchecked(k);
            let half_cos = (theta / 2.0).cos();
            let chord = (curve.point(curve.next(k)) - curve.point(curve.prev(k))).norm();
            if curve.is_cusp(k) || chord == 0.0 {
                return Err(inapplicable(scheme, format!("vertex {k} is a cusp")));
            }
            chord / (2.0 * half_cos)
        }
        LineElementScheme::Arclength => {
            if !is_uniform(curve) {
                return Err(inapplicable(scheme, "edge lengths are not uniform".into()));
            }
            if curve.is_cusp(k) {
                return Err(inapplicable(scheme, format!("vertex {k} is a cusp")));
            }
            0.5 * (l_next + l_prev) * (curve.turning_angle_unchecked(k) / 2.0).cos()
        }
        LineElementScheme::Hatakeyama => l_prev,
        LineElementScheme::HalfEdgeSum => 0.5 * (l_next + l_prev),
        LineElementScheme::Custom(values) => {
            curve.check_field_len(values.len())?;
            values[k]
        }
    };
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(inapplicable(
            scheme,
            format!("line element at vertex {k} is {value}, must be positive"),
        ))
    }
}

/// Curvature vector `N~_k = (t_k - t_{k-1}) / L_k`.
///
/// Independent of the normal convention.
pub fn curvature_vector(curve: &DiscreteCurve, scheme: &LineElementScheme, k: usize) -> Result<Vec2> {
    let weight = line_element(curve, scheme, k)?;
    Ok((curve.unit_tangent(k) - curve.unit_tangent(curve.prev(k))) / weight)
}

/// Signed vertex curvature `2 sin(theta_k / 2) / L_k`.
pub fn vertex_curvature(curve: &DiscreteCurve, scheme: &LineElementScheme, k: usize) -> Result<f64> {
    let weight = line_element(curve, scheme, k)?;
    Ok(2.0 * (curve.turning_angle_unchecked(k) / 2.0).sin() / weight)
}

fn check_edge_interior(curve: &DiscreteCurve, k: usize) -> Result<()> {
    curve.check_edge(k)?;
    let next = curve.next(k);
    if !curve.is_interior(k) || !curve.is_interior(next) {
        return Err(CurveError::IndexOutOfRange {
            index: k,
            what: "edge with interior endpoints",
            valid: if curve.vertex_count() >= 4 {
                format!("1..={}", curve.vertex_count() - 3)
            } else {
                "none".into()
            },
        });
    }
    if curve.is_cusp(k) || curve.is_cusp(next) {
        return Err(CurveError::CuspAdjacent { edge: k });
    }
    Ok(())
}

/// Edge line element `L'_k = l_k cos(theta_k / 2) cos(theta_{k+1} / 2)`.
pub fn edge_line_element(curve: &DiscreteCurve, k: usize) -> Result<f64> {
    check_edge_interior(curve, k)?;
    let a = curve.turning_angle_unchecked(k);
    let b = curve.turning_angle_unchecked(curve.next(k));
    Ok(curve.edge_lengths()[k] * (a / 2.0).cos() * (b / 2.0).cos())
}

/// Edge curvature `(tan(theta_k / 2) + tan(theta_{k+1} / 2)) / l_k`.
pub fn edge_curvature(curve: &DiscreteCurve, k: usize) -> Result<f64> {
    check_edge_interior(curve, k)?;
    let a = curve.turning_angle_unchecked(k);
    let b = curve.turning_angle_unchecked(curve.next(k));
    Ok(((a / 2.0).tan() + (b / 2.0).tan()) / curve.edge_lengths()[k])
}

/// Edge gradient `(psi_{k+1} - psi_k) / l_k`, one value per edge.
pub fn discrete_gradient(curve: &DiscreteCurve, psi: &[f64]) -> Result<Vec<f64>> {
    curve.check_field_len(psi.len())?;
    Ok((0..curve.edge_count())
        .map(|k| (psi[curve.next(k)] - psi[k]) / curve.edge_lengths()[k])
        .collect())
}

/// Vertex Laplacian `(grad psi_k - grad psi_{k-1}) / L_k`.
///
/// One value per vertex; boundary vertices of open curves carry 0.
pub fn discrete_laplacian(curve: &DiscreteCurve, scheme: &LineElementScheme, psi: &[f64]) -> Result<Vec<f64>> {
    let grad = discrete_gradient(curve, psi)?;
    let mut out = vec![0.0; curve.vertex_count()];
    for k in curve.interior_vertices() {
        let weight = line_element(curve, scheme, k)?;
        out[k] = (grad[k] - grad[curve.prev(k)]) / weight;
    }
    Ok(out)
}

/// Dirichlet energy `(1/2) sum_k |grad psi_k|^2 l_k`.
pub fn dirichlet_energy(curve: &DiscreteCurve, psi: &[f64]) -> Result<f64> {
    let grad = discrete_gradient(curve, psi)?;
    Ok(0.5
        * grad
            .iter()
            .zip(curve.edge_lengths())
            .map(|(g, l)| g * g * l)
            .sum::<f64>())
}
