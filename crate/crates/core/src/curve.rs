//! Discrete planar curves and their elementary geometry.
//!
//! A [`DiscreteCurve`] is an ordered list of vertices `p_0 .. p_{n-1}`,
//! either open (a path with `n - 1` edges) or closed (a circle with `n`
//! edges, indices taken mod `n`). Every edge must have nonzero length.
//!
//! Edge normals are `nu_k = R (p_{k+1} - p_k) / l_k` where `R` is the quarter
//! turn selected by [`Sigma`]: `Sigma::Positive` rotates by `+pi/2`,
//! `Sigma::Negative` by `-pi/2`. The default is `Negative`, which gives
//! outward normals on counterclockwise convex polygons.
//!
//! Index conventions used throughout the crate:
//! - edges: `0..n` when closed, `0..n-1` when open;
//! - interior vertices: all `0..n` when closed, `1..n-1` when open.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{CurveError, Result};
use crate::Vec2;

/// Threshold on `1 + cos(theta)` below which a vertex is treated as a cusp.
pub const CUSP_TOLERANCE: f64 = 1e-12;

/// Allowed distance of the turning sum from a multiple of `2 pi`.
pub const TURNING_TOLERANCE: f64 = 1e-8;

/// Orientation of the edge-normal rotation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sigma {
    /// `R` is rotation by `+pi/2`.
    Positive,
    /// `R` is rotation by `-pi/2`.
    #[default]
    Negative,
}

impl Sigma {
    pub fn value(self) -> f64 {
        match self {
            Sigma::Positive => 1.0,
            Sigma::Negative => -1.0,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sigma::Positive => 1,
            Sigma::Negative => -1,
        }
    }

    pub fn from_i32(sign: i32) -> Option<Sigma> {
        match sign {
            1 => Some(Sigma::Positive),
            -1 => Some(Sigma::Negative),
            _ => None,
        }
    }

    pub fn flipped(self) -> Sigma {
        match self {
            Sigma::Positive => Sigma::Negative,
            Sigma::Negative => Sigma::Positive,
        }
    }

    /// Applies the quarter turn `R` to `v`.
    #[inline]
    pub fn rotate(self, v: Vec2) -> Vec2 {
        match self {
            Sigma::Positive => Vec2::new(-v.y, v.x),
            Sigma::Negative => Vec2::new(v.y, -v.x),
        }
    }

    /// Applies `R^{-1} = -R`.
    #[inline]
    pub fn rotate_inverse(self, v: Vec2) -> Vec2 {
        -self.rotate(v)
    }
}

/// z-component of the planar cross product.
#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// An immutable, validated polygonal curve.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteCurve {
    points: Vec<Vec2>,
    closed: bool,
    sigma: Sigma,
    lengths: Vec<f64>,
}

impl DiscreteCurve {
    /// Validates and builds a curve.
    pub fn new(points: Vec<Vec2>, closed: bool, sigma: Sigma) -> Result<Self> {
        let n = points.len();
        let (min, kind) = if closed { (3, "closed") } else { (2, "open") };
        if n < min {
            return Err(CurveError::TooFewVertices { got: n, min, kind });
        }
        if let Some(bad) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(CurveError::InvalidArgument(format!(
                "vertex {bad} has a non-finite coordinate"
            )));
        }
        let edge_count = if closed { n } else { n - 1 };
        let mut lengths = Vec::with_capacity(edge_count);
        for k in 0..edge_count {
            let l = (points[(k + 1) % n] - points[k]).norm();
            if l == 0.0 {
                return Err(CurveError::ZeroEdge { edge: k });
            }
            lengths.push(l);
        }
        Ok(Self {
            points,
            closed,
            sigma,
            lengths,
        })
    }

    /// Convenience constructor from `(x, y)` tuples.
    pub fn from_xy(points: &[(f64, f64)], closed: bool, sigma: Sigma) -> Result<Self> {
        Self::new(
            points.iter().map(|&(x, y)| Vec2::new(x, y)).collect(),
            closed,
            sigma,
        )
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn point(&self, k: usize) -> Vec2 {
        self.points[k]
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn sigma(&self) -> Sigma {
        self.sigma
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Same vertices with the opposite normal convention.
    pub fn with_sigma(&self, sigma: Sigma) -> Self {
        Self {
            sigma,
            ..self.clone()
        }
    }

    /// Same vertices traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self::new(points, self.closed, self.sigma).expect("reversal keeps edges nonzero")
    }

    /// Translated copy.
    pub fn translated(&self, offset: Vec2) -> Self {
        Self {
            points: self.points.iter().map(|p| p + offset).collect(),
            ..self.clone()
        }
    }

    /// Index of the vertex after `k`, wrapping when closed.
    #[inline]
    pub fn next(&self, k: usize) -> usize {
        (k + 1) % self.points.len()
    }

    /// Index of the vertex before `k`, wrapping when closed.
    #[inline]
    pub fn prev(&self, k: usize) -> usize {
        let n = self.points.len();
        (k + n - 1) % n
    }

    pub fn interior_vertices(&self) -> std::ops::Range<usize> {
        if self.closed {
            0..self.points.len()
        } else {
            1..self.points.len() - 1
        }
    }

    pub fn is_interior(&self, k: usize) -> bool {
        self.interior_vertices().contains(&k)
    }

    pub(crate) fn check_interior(&self, k: usize) -> Result<()> {
        if self.is_interior(k) {
            Ok(())
        } else {
            Err(CurveError::IndexOutOfRange {
                index: k,
                what: "interior vertex",
                valid: range_label(self.interior_vertices()),
            })
        }
    }

    pub(crate) fn check_edge(&self, k: usize) -> Result<()> {
        if k < self.edge_count() {
            Ok(())
        } else {
            Err(CurveError::IndexOutOfRange {
                index: k,
                what: "edge",
                valid: range_label(0..self.edge_count()),
            })
        }
    }

    pub(crate) fn require_closed(&self) -> Result<()> {
        if self.closed {
            Ok(())
        } else {
            Err(CurveError::OpenCurve)
        }
    }

    pub(crate) fn check_field_len(&self, got: usize) -> Result<()> {
        let expected = self.points.len();
        if got == expected {
            Ok(())
        } else {
            Err(CurveError::LengthMismatch { expected, got })
        }
    }

    /// Edge vector `p_{k+1} - p_k`; `k` must be a valid edge.
    #[inline]
    pub fn edge_vector(&self, k: usize) -> Vec2 {
        self.points[self.next(k)] - self.points[k]
    }

    /// Unit tangent `t_k = (p_{k+1} - p_k) / l_k`.
    #[inline]
    pub fn unit_tangent(&self, k: usize) -> Vec2 {
        self.edge_vector(k) / self.lengths[k]
    }

    /// Unit edge normal `nu_k = R t_k`.
    pub fn edge_normal(&self, k: usize) -> Result<Vec2> {
        self.check_edge(k)?;
        Ok(self.edge_normal_unchecked(k))
    }

    #[inline]
    pub(crate) fn edge_normal_unchecked(&self, k: usize) -> Vec2 {
        self.sigma.rotate(self.unit_tangent(k))
    }

    /// Signed turning angle at an interior vertex, in `(-pi, pi]`.
    ///
    /// `theta_k` satisfies `R_{sigma theta_k} nu_{k-1} = nu_k`. An exactly
    /// antiparallel pair of edges gives `+pi`; see [`Self::is_cusp`].
    pub fn turning_angle(&self, k: usize) -> Result<f64> {
        self.check_interior(k)?;
        Ok(self.turning_angle_unchecked(k))
    }

    pub(crate) fn turning_angle_unchecked(&self, k: usize) -> f64 {
        let a = self.unit_tangent(self.prev(k));
        let b = self.unit_tangent(k);
        let c = cross(a, b);
        let d = a.dot(&b);
        if c == 0.0 && d < 0.0 {
            return PI;
        }
        let theta = self.sigma.value() * c.atan2(d);
        if theta <= -PI {
            PI
        } else {
            theta
        }
    }

    /// Turning angles at every interior vertex, indexed by vertex
    /// (boundary entries of open curves are 0).
    pub fn turning_angles(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.points.len()];
        for k in self.interior_vertices() {
            out[k] = self.turning_angle_unchecked(k);
        }
        out
    }

    /// True when `1 + cos(theta_k)` is below [`CUSP_TOLERANCE`].
    pub fn is_cusp(&self, k: usize) -> bool {
        self.is_interior(k) && 1.0 + self.turning_angle_unchecked(k).cos() <= CUSP_TOLERANCE
    }

    pub fn cusp_vertices(&self) -> Vec<usize> {
        self.interior_vertices().filter(|&k| self.is_cusp(k)).collect()
    }

    pub(crate) fn reject_cusp(&self, k: usize) -> Result<f64> {
        let theta = self.turning_angle(k)?;
        if 1.0 + theta.cos() <= CUSP_TOLERANCE {
            Err(CurveError::CuspVertex { vertex: k })
        } else {
            Ok(theta)
        }
    }

    /// `L = sum_k l_k`.
    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    /// Signed enclosed area `(1/2) sum_k <p_k, nu_k> l_k`.
    ///
    /// Equals `-sigma` times the shoelace area, so counterclockwise polygons
    /// have positive volume under the default `Sigma::Negative`.
    pub fn enclosed_volume(&self) -> Result<f64> {
        self.require_closed()?;
        let sum: f64 = (0..self.edge_count())
            .map(|k| self.points[k].dot(&self.edge_normal_unchecked(k)) * self.lengths[k])
            .sum();
        Ok(0.5 * sum)
    }

    /// The integer `m` with `sum_k theta_k = 2 m pi`.
    pub fn turning_number(&self) -> Result<i64> {
        self.require_closed()?;
        if let Some(&vertex) = self.cusp_vertices().first() {
            return Err(CurveError::CuspVertex { vertex });
        }
        let total: f64 = self.turning_angles().iter().sum();
        let m = (total / TAU).round();
        let residual = (total - m * TAU).abs();
        if residual > TURNING_TOLERANCE {
            return Err(CurveError::NonIntegerTurning { residual });
        }
        Ok(m as i64)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.max((a - b).norm());
            }
        }
        best
    }

    /// Vertex average.
    pub fn centroid(&self) -> Vec2 {
        let sum = self.points.iter().fold(Vec2::zeros(), |acc, p| acc + p);
        sum / self.points.len() as f64
    }
}

fn range_label(r: std::ops::Range<usize>) -> String {
    if r.is_empty() {
        "none".to_string()
    } else {
        format!("{}..={}", r.start, r.end - 1)
    }
}

/// Parameters of the regular (possibly star) polygon
/// `p_k = center + a (cos(2 pi m k / n + phase), sin(2 pi m k / n + phase))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularPolygonSpec {
    pub n: usize,
    pub m: usize,
    pub radius: f64,
    pub center: [f64; 2],
    pub phase: f64,
    pub sigma: Sigma,
}

impl RegularPolygonSpec {
    pub fn new(n: usize, m: usize, radius: f64) -> Self {
        Self {
            n,
            m,
            radius,
            center: [0.0, 0.0],
            phase: 0.0,
            sigma: Sigma::Negative,
        }
    }

    pub fn with_sigma(mut self, sigma: Sigma) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_center(mut self, x: f64, y: f64) -> Self {
        self.center = [x, y];
        self
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }
}

/// Rejects windings outside `1..=n-1` and the degenerate `m/n = 1/2`.
pub fn check_winding(n: usize, m: usize) -> Result<()> {
    if n < 3 || m == 0 || m >= n || 2 * m == n {
        Err(CurveError::InvalidWinding { n, m })
    } else {
        Ok(())
    }
}

/// Builds the regular polygon `Gamma^{m,n}` described by `spec`.
pub fn regular_polygon(spec: &RegularPolygonSpec) -> Result<DiscreteCurve> {
    check_winding(spec.n, spec.m)?;
    if !(spec.radius > 0.0 && spec.radius.is_finite()) {
        return Err(CurveError::InvalidArgument(format!(
            "radius must be positive, got {}",
            spec.radius
        )));
    }
    let center = Vec2::new(spec.center[0], spec.center[1]);
    let step = TAU * spec.m as f64 / spec.n as f64;
    let points = (0..spec.n)
        .map(|k| {
            let angle = step * k as f64 + spec.phase;
            center + spec.radius * Vec2::new(angle.cos(), angle.sin())
        })
        .collect();
    DiscreteCurve::new(points, true, spec.sigma)
}
