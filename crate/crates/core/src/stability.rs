//! Second variation of length under an area constraint, and the spectral
//! stability of regular polygons.
//!
//! At an equilibrium of `L + kappa Vol` the second variation along `v` is
//! the quadratic form `Q^L(v) + kappa Q^V(v)` with
//!
//! ```text
//! Q^L(v) = sum_k (|v_{k+1} - v_k|^2 - <v_{k+1} - v_k, R nu_k>^2) / l_k
//! Q^V(v) = sum_k <v_k, R v_{k+1}>
//! ```
//!
//! On a regular polygon `Gamma^{m,n}` and a normal field `psi_k N_k` this
//! reduces to `<H Psi, Psi> / l_0` for the circulant matrix `H` with first
//! row `(2, -alpha, 0, .., 0, -alpha)`, `alpha = 1 + 2 tan^2(m pi / n)`,
//! whose eigenvalues are `lambda_j = 2 - 2 alpha cos(2 pi j / n)`. Only
//! `j = 1..n-1` matter: the constant mode changes the area.
//!
//! Closed forms for regular polygons use the default normal convention
//! (`Sigma::Negative`, counterclockwise placement), where
//! `kappa = -1 / (a cos(m pi / n))`. Every spectral quantity depends on
//! `tan^2` and `sin^2` only and is therefore convention free.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::curve::{check_winding, DiscreteCurve};
use crate::error::{CurveError, Result};
use crate::offsets::{vertex_normal, vertex_tangent};
use crate::variation::{check_variation_field, equilibrium_residual, residual_scale};
use crate::Vec2;

/// Residual tolerance (relative to [`residual_scale`]) for accepting a curve
/// as an equilibrium in [`second_variation`].
pub const EQUILIBRIUM_TOLERANCE: f64 = 1e-9;

/// Tolerance for `sum psi_k = 0`, relative to `sum |psi_k|`.
pub const MEAN_TOLERANCE: f64 = 1e-10;

/// Normal and tangential coordinates of a variation field:
/// `v_k = psi_k N_k + eta_k T_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalTangentField {
    pub psi: Vec<f64>,
    pub eta: Vec<f64>,
}

impl NormalTangentField {
    /// Normal-only field.
    pub fn normal(psi: Vec<f64>) -> Self {
        let eta = vec![0.0; psi.len()];
        Self { psi, eta }
    }

    /// Rebuilds `v_k = psi_k N_k + eta_k T_k` on `curve`.
    pub fn reconstruct(&self, curve: &DiscreteCurve) -> Result<Vec<Vec2>> {
        curve.require_closed()?;
        curve.check_field_len(self.psi.len())?;
        curve.check_field_len(self.eta.len())?;
        (0..curve.vertex_count())
            .map(|k| Ok(self.psi[k] * vertex_normal(curve, k)? + self.eta[k] * vertex_tangent(curve, k)?))
            .collect()
    }
}

/// `Q^V(v) = sum_k <v_k, R v_{k+1}>`, the Hessian of the enclosed volume.
pub fn qv_form(curve: &DiscreteCurve, field: &[Vec2]) -> Result<f64> {
    curve.require_closed()?;
    check_variation_field(curve, field)?;
    let sigma = curve.sigma();
    Ok((0..curve.vertex_count())
        .map(|k| field[k].dot(&sigma.rotate(field[curve.next(k)])))
        .sum())
}

/// `Q^L(v) = sum_k (|grad v_k|^2 - <grad v_k, R nu_k>^2) l_k`, the Hessian
/// of the length. Never negative.
pub fn ql_form(curve: &DiscreteCurve, field: &[Vec2]) -> Result<f64> {
    curve.require_closed()?;
    check_variation_field(curve, field)?;
    let sigma = curve.sigma();
    Ok((0..curve.edge_count())
        .map(|k| {
            let l = curve.edge_lengths()[k];
            let grad = (field[curve.next(k)] - field[k]) / l;
            let along = grad.dot(&sigma.rotate(curve.edge_normal_unchecked(k)));
            (grad.norm_squared() - along * along) * l
        })
        .sum())
}

/// Second variation `Q^L(v) + kappa Q^V(v)` at an equilibrium of
/// `L + kappa Vol`. Rejects non-equilibria.
pub fn second_variation(curve: &DiscreteCurve, kappa: f64, field: &[Vec2]) -> Result<f64> {
    curve.require_closed()?;
    let residual = equilibrium_residual(curve, kappa)?
        .iter()
        .map(|a| a.norm())
        .fold(0.0, f64::max);
    if residual > EQUILIBRIUM_TOLERANCE * residual_scale(curve, kappa) {
        return Err(CurveError::NotEquilibrium { kappa, residual });
    }
    Ok(ql_form(curve, field)? + kappa * qv_form(curve, field)?)
}

/// Coordinates of `field` in the vertex frame `(N_k, T_k)`.
pub fn decompose_field(curve: &DiscreteCurve, field: &[Vec2]) -> Result<NormalTangentField> {
    curve.require_closed()?;
    curve.check_field_len(field.len())?;
    let mut psi = Vec::with_capacity(field.len());
    let mut eta = Vec::with_capacity(field.len());
    for (k, v) in field.iter().enumerate() {
        let normal = vertex_normal(curve, k)?;
        let tangent = vertex_tangent(curve, k)?;
        psi.push(v.dot(&normal) / normal.norm_squared());
        eta.push(v.dot(&tangent) / tangent.norm_squared());
    }
    Ok(NormalTangentField { psi, eta })
}

/// Edge length `l_0 = 2 a sin(m pi / n)` of `Gamma^{m,n}` with radius `a`.
pub fn regular_edge_length(n: usize, m: usize, radius: f64) -> f64 {
    2.0 * radius * (PI * m as f64 / n as f64).sin()
}

/// Equilibrium multiplier `kappa = -1 / (a cos(m pi / n))`.
pub fn regular_kappa(n: usize, m: usize, radius: f64) -> f64 {
    -1.0 / (radius * (PI * m as f64 / n as f64).cos())
}

/// Closed-form second variation on `Gamma^{m,n}(a)`:
///
/// ```text
/// sum_k [ |grad psi_k|^2 - kappa^2 psi_k psi_{k+1}
///         + tan^2(theta_0 / 2) (kappa grad psi_k (eta_{k+1} + eta_k) + |grad eta_k|^2) ] l_0
/// ```
///
/// Valid for any `psi`, `eta`; admissible (area preserving) normal parts
/// have `sum psi_k = 0`.
pub fn second_variation_regular(n: usize, m: usize, radius: f64, psi: &[f64], eta: &[f64]) -> Result<f64> {
    check_winding(n, m)?;
    for len in [psi.len(), eta.len()] {
        if len != n {
            return Err(CurveError::LengthMismatch { expected: n, got: len });
        }
    }
    let l0 = regular_edge_length(n, m, radius);
    let kappa = regular_kappa(n, m, radius);
    let tan2 = (PI * m as f64 / n as f64).tan().powi(2);
    let mut total = 0.0;
    for k in 0..n {
        let next = (k + 1) % n;
        let grad_psi = (psi[next] - psi[k]) / l0;
        let grad_eta = (eta[next] - eta[k]) / l0;
        total += (grad_psi * grad_psi - kappa * kappa * psi[k] * psi[next]
            + tan2 * (kappa * grad_psi * (eta[next] + eta[k]) + grad_eta * grad_eta))
            * l0;
    }
    Ok(total)
}

/// `psi_k = A cos(2 pi j k / n) + B sin(2 pi j k / n)`.
pub fn harmonic_field(n: usize, j: usize, a: f64, b: f64) -> Result<Vec<f64>> {
    if n < 3 || j == 0 || j >= n {
        return Err(CurveError::InvalidArgument(format!(
            "harmonic frequency must satisfy 1 <= j <= n-1, got n={n} j={j}"
        )));
    }
    Ok((0..n)
        .map(|k| {
            let angle = TAU * (j * k) as f64 / n as f64;
            a * angle.cos() + b * angle.sin()
        })
        .collect())
}

fn check_zero_mean(psi: &[f64]) -> Result<()> {
    let sum: f64 = psi.iter().sum();
    let scale: f64 = psi.iter().map(|x| x.abs()).sum();
    if sum.abs() > MEAN_TOLERANCE * scale {
        return Err(CurveError::MeanNotZero {
            mean: sum / psi.len() as f64,
        });
    }
    Ok(())
}

/// Outcome of the discrete Wirtinger inequality
/// `sum (psi_{k+1} - psi_k)^2 >= 4 sin^2(pi / n) sum psi_k^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WirtingerGap {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    /// `psi` lies in the span of the first harmonics.
    pub equality: bool,
}

/// Evaluates the Wirtinger inequality for a closed zero-mean sequence.
pub fn wirtinger_gap(psi: &[f64]) -> Result<WirtingerGap> {
    let n = psi.len();
    if n < 3 {
        return Err(CurveError::InvalidArgument(format!("need at least 3 samples, got {n}")));
    }
    check_zero_mean(psi)?;
    let lhs: f64 = (0..n).map(|k| (psi[(k + 1) % n] - psi[k]).powi(2)).sum();
    let norm2: f64 = psi.iter().map(|x| x * x).sum();
    let rhs = 4.0 * (PI / n as f64).sin().powi(2) * norm2;

    let cos = harmonic_field(n, 1, 1.0, 0.0)?;
    let sin = harmonic_field(n, 1, 0.0, 1.0)?;
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let (ca, sb) = (dot(psi, &cos) / dot(&cos, &cos), dot(psi, &sin) / dot(&sin, &sin));
    let residual: f64 = (0..n)
        .map(|k| (psi[k] - ca * cos[k] - sb * sin[k]).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(WirtingerGap {
        lhs,
        rhs,
        gap: lhs - rhs,
        equality: residual <= 1e-10 * norm2.sqrt(),
    })
}

/// Symmetric circulant matrix stored by its first row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CirculantMatrix {
    pub first_row: Vec<f64>,
}

impl CirculantMatrix {
    pub fn size(&self) -> usize {
        self.first_row.len()
    }

    /// Entry `(i, j)` equals `first_row[(j - i) mod n]`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let n = self.size();
        self.first_row[(j + n - i) % n]
    }

    pub fn dense(&self) -> Vec<Vec<f64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.apply(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// `alpha = 1 + 2 tan^2(m pi / n)`.
pub fn jacobi_alpha(n: usize, m: usize) -> Result<f64> {
    check_winding(n, m)?;
    Ok(1.0 + 2.0 * (PI * m as f64 / n as f64).tan().powi(2))
}

/// The Jacobi matrix `H` of the normal second variation on `Gamma^{m,n}`.
pub fn jacobi_matrix(n: usize, m: usize) -> Result<CirculantMatrix> {
    let alpha = jacobi_alpha(n, m)?;
    let mut first_row = vec![0.0; n];
    first_row[0] = 2.0;
    first_row[1] -= alpha;
    first_row[n - 1] -= alpha;
    Ok(CirculantMatrix { first_row })
}

/// `lambda_j = 2 - 2 alpha cos(2 pi j / n)`.
pub fn jacobi_eigenvalue(n: usize, m: usize, j: usize) -> Result<f64> {
    let alpha = jacobi_alpha(n, m)?;
    Ok(2.0 - 2.0 * alpha * (TAU * j as f64 / n as f64).cos())
}

/// Eigenvector `e_j = (1, w^j, .., w^{j(n-1)})`, `w = exp(2 pi i / n)`.
pub fn jacobi_eigenvector(n: usize, j: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, TAU * ((j * k) % n) as f64 / n as f64))
        .collect()
}

/// Spectrum of `H` on zero-mean fields.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    /// `lambda_1 .. lambda_{n-1}`; entry `i` is `lambda_{i+1}`.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub morse_index: usize,
    /// Frequencies `j` with `lambda_j < 0`.
    pub certificate_modes: Vec<usize>,
}

pub fn jacobi_spectrum(n: usize, m: usize) -> Result<SpectrumReport> {
    let alpha = jacobi_alpha(n, m)?;
    let eigenvalues: Vec<f64> = (1..n)
        .map(|j| 2.0 - 2.0 * alpha * (TAU * j as f64 / n as f64).cos())
        .collect();
    let certificate_modes: Vec<usize> = eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l < 0.0)
        .map(|(i, _)| i + 1)
        .collect();
    Ok(SpectrumReport {
        n,
        m,
        alpha,
        min_eigenvalue: eigenvalues.iter().copied().fold(f64::INFINITY, f64::min),
        morse_index: certificate_modes.len(),
        certificate_modes,
        eigenvalues,
    })
}

/// Number of negative `lambda_j`, `1 <= j <= n-1`.
pub fn morse_index(n: usize, m: usize) -> Result<usize> {
    Ok(jacobi_spectrum(n, m)?.morse_index)
}

/// Same count through the factorization
/// `lambda_j = 4 cos^2(j pi / n) / cos^2(m pi / n) (tan^2(j pi / n) - sin^2(m pi / n))`:
/// the frequencies with `tan^2(j pi / n) < sin^2(m pi / n)`.
pub fn morse_index_by_threshold(n: usize, m: usize) -> Result<usize> {
    check_winding(n, m)?;
    let s2 = (PI * m as f64 / n as f64).sin().powi(2);
    Ok((1..n)
        .filter(|&j| 2 * j != n && (PI * j as f64 / n as f64).tan().powi(2) < s2)
        .count())
}

/// Frequency bound `(n / pi) arctan(sin(m pi / n))` below which `lambda_j < 0`.
pub fn negative_frequency_bound(n: usize, m: usize) -> Result<f64> {
    check_winding(n, m)?;
    Ok(n as f64 / PI * (PI * m as f64 / n as f64).sin().atan())
}

/// Second variation of `Gamma^{m,n}(a)` along the first-harmonic normal field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstabilityCertificate {
    pub n: usize,
    pub m: usize,
    pub radius: f64,
    pub psi: Vec<f64>,
    /// `(4 / l_0)[sin^2(pi/n) - cos(2 pi/n) tan^2(m pi/n)]`, i.e. second
    /// variation per unit `sum psi_k^2`.
    pub coefficient: f64,
    pub delta2_length: f64,
    /// `true` when `delta2_length < 0`, proving instability.
    pub destabilizing: bool,
}

pub fn instability_certificate(n: usize, m: usize, radius: f64) -> Result<InstabilityCertificate> {
    check_winding(n, m)?;
    if !(radius > 0.0) {
        return Err(CurveError::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let psi = harmonic_field(n, 1, 1.0, 0.0)?;
    let l0 = regular_edge_length(n, m, radius);
    let (nf, mf) = (n as f64, m as f64);
    let coefficient = 4.0 / l0
        * ((PI / nf).sin().powi(2) - (TAU / nf).cos() * (PI * mf / nf).tan().powi(2));
    let norm2: f64 = psi.iter().map(|x| x * x).sum();
    let delta2_length = coefficient * norm2;
    Ok(InstabilityCertificate {
        n,
        m,
        radius,
        psi,
        coefficient,
        delta2_length,
        destabilizing: delta2_length < 0.0,
    })
}

/// Discrete Fourier coefficients of a closed polygon viewed in `C^n`:
/// `z_k = sum_j c_j w^{jk}`, `c_j = (1/n) sum_k z_k w^{-jk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierModes {
    coefficients: Vec<Complex64>,
}

impl FourierModes {
    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    /// `c_j` for `1 <= j <= n`; `c_n` is the centroid.
    pub fn coefficient(&self, j: usize) -> Complex64 {
        self.coefficients[j % self.n()]
    }

    /// Coefficients in order `c_1 .. c_n`.
    pub fn coefficients(&self) -> Vec<Complex64> {
        (1..=self.n()).map(|j| self.coefficient(j)).collect()
    }

    pub fn reconstruct(&self) -> Vec<Vec2> {
        let n = self.n();
        (0..n)
            .map(|k| {
                let z: Complex64 = (0..n)
                    .map(|j| self.coefficients[j] * Complex64::from_polar(1.0, TAU * ((j * k) % n) as f64 / n as f64))
                    .sum();
                Vec2::new(z.re, z.im)
            })
            .collect()
    }
}

pub fn fourier_decompose(curve: &DiscreteCurve) -> Result<FourierModes> {
    curve.require_closed()?;
    let n = curve.vertex_count();
    let coefficients = (0..n)
        .map(|j| {
            let sum: Complex64 = curve
                .points()
                .iter()
                .enumerate()
                .map(|(k, p)| Complex64::new(p.x, p.y) * Complex64::from_polar(1.0, -TAU * ((j * k) % n) as f64 / n as f64))
                .sum();
            sum / n as f64
        })
        .collect();
    Ok(FourierModes { coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{regular_polygon, RegularPolygonSpec, Sigma};
    use std::f64::consts::SQRT_2;

    fn square() -> DiscreteCurve {
        regular_polygon(&RegularPolygonSpec::new(4, 1, 1.0)).unwrap()
    }

    #[test]
    fn trivial_forms() {
        let sq = square();
        let zero = vec![Vec2::zeros(); 4];
        assert_eq!(qv_form(&sq, &zero).unwrap(), 0.0);
        assert_eq!(ql_form(&sq, &zero).unwrap(), 0.0);
        let shift = vec![Vec2::new(0.4, -2.0); 4];
        assert!(qv_form(&sq, &shift).unwrap().abs() < 1e-15);
        assert_eq!(ql_form(&sq, &shift).unwrap(), 0.0);
        assert!(second_variation(&sq, -SQRT_2, &shift).unwrap().abs() < 1e-15);
    }

    #[test]
    fn rotation_is_neutral() {
        let sq = square();
        let rot: Vec<Vec2> = sq.points().iter().map(|p| sq.sigma().rotate(*p)).collect();
        assert!(second_variation(&sq, -SQRT_2, &rot).unwrap().abs() < 1e-14);
    }

    #[test]
    fn second_variation_requires_equilibrium() {
        let sq = square();
        let field = vec![Vec2::new(1.0, 0.0); 4];
        assert!(matches!(
            second_variation(&sq, -1.0, &field).unwrap_err(),
            CurveError::NotEquilibrium { .. }
        ));
    }

    #[test]
    fn decomposition_coordinates() {
        let sq = square();
        let field: Vec<Vec2> = (0..4)
            .map(|k| 3.0 * vertex_normal(&sq, k).unwrap() - 2.0 * vertex_tangent(&sq, k).unwrap())
            .collect();
        let nt = decompose_field(&sq, &field).unwrap();
        for k in 0..4 {
            assert!((nt.psi[k] - 3.0).abs() < 1e-15 && (nt.eta[k] + 2.0).abs() < 1e-15);
        }
        let back = nt.reconstruct(&sq).unwrap();
        for (a, b) in back.iter().zip(&field) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn square_normal_mode_matches_jacobi_form() {
        let psi = [1.0, 0.0, -1.0, 0.0];
        let closed = second_variation_regular(4, 1, 1.0, &psi, &[0.0; 4]).unwrap();
        let h = jacobi_matrix(4, 1).unwrap();
        let l0 = regular_edge_length(4, 1, 1.0);
        // <H psi, psi> = sum (-3 psi_{k-1} + 2 psi_k - 3 psi_{k+1}) psi_k = 4
        assert!((h.quadratic_form(&psi) - 4.0).abs() < 1e-14);
        assert!((closed - 4.0 / l0).abs() < 1e-13);
        let sq = square();
        let field = NormalTangentField::normal(psi.to_vec()).reconstruct(&sq).unwrap();
        let general = second_variation(&sq, -SQRT_2, &field).unwrap();
        assert!((general - closed).abs() < 1e-13);
        let tangential_const = second_variation_regular(4, 1, 1.0, &[0.0; 4], &[0.7; 4]).unwrap();
        assert!(tangential_const.abs() < 1e-15);
    }

    #[test]
    fn harmonic_fields() {
        let h = harmonic_field(4, 1, 1.0, 0.0).unwrap();
        let expect = [1.0, 0.0, -1.0, 0.0];
        for (a, b) in h.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let h = harmonic_field(5, 2, 0.0, 1.0).unwrap();
        for (k, v) in h.iter().enumerate() {
            assert!((v - (4.0 * PI * k as f64 / 5.0).sin()).abs() < 1e-15);
        }
        assert!(harmonic_field(5, 0, 1.0, 1.0).is_err());
        assert!(harmonic_field(5, 5, 1.0, 1.0).is_err());
    }

    #[test]
    fn wirtinger_examples() {
        let w = wirtinger_gap(&[1.0, 0.0, -1.0, 0.0]).unwrap();
        assert!((w.lhs - 4.0).abs() < 1e-15 && (w.rhs - 4.0).abs() < 1e-14);
        assert!(w.gap.abs() < 1e-14 && w.equality);
        let w = wirtinger_gap(&[1.0, -1.0, 1.0, -1.0]).unwrap();
        assert!((w.lhs - 16.0).abs() < 1e-15 && (w.gap - 8.0).abs() < 1e-14);
        assert!(!w.equality);
        assert!(matches!(wirtinger_gap(&[1.0, 1.0, 1.0]).unwrap_err(), CurveError::MeanNotZero { .. }));
    }

    #[test]
    fn jacobi_matrix_and_spectrum() {
        let h = jacobi_matrix(4, 1).unwrap();
        for (a, b) in h.first_row.iter().zip([2.0, -3.0, 0.0, -3.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        let dense = h.dense();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(dense[i][j], dense[j][i]);
                assert_eq!(dense[i][j], dense[(i + 1) % 4][(j + 1) % 4]);
            }
        }
        assert!((jacobi_alpha(5, 2).unwrap() - 19.944272).abs() < 1e-6);
        let s = jacobi_spectrum(4, 1).unwrap();
        for (a, b) in s.eigenvalues.iter().zip([2.0, 8.0, 2.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(s.morse_index, 0);
        let s = jacobi_spectrum(5, 2).unwrap();
        assert!((s.eigenvalues[0] + 10.3262).abs() < 1e-4 && (s.eigenvalues[3] + 10.3262).abs() < 1e-4);
        assert!((s.eigenvalues[1] - 34.2705).abs() < 1e-4 && (s.eigenvalues[2] - 34.2705).abs() < 1e-4);
        assert_eq!(s.morse_index, 2);
        assert_eq!(s.certificate_modes, vec![1, 4]);
        assert!(jacobi_spectrum(5, 1).unwrap().eigenvalues.iter().all(|&l| l > 0.0));
        assert!(jacobi_spectrum(6, 3).is_err());
    }

    #[test]
    fn eigenvectors_diagonalize_h() {
        for (n, m) in [(5, 2), (8, 3), (7, 1)] {
            let h = jacobi_matrix(n, m).unwrap();
            for j in 1..n {
                let e = jacobi_eigenvector(n, j);
                let lambda = jacobi_eigenvalue(n, m, j).unwrap();
                let re: Vec<f64> = e.iter().map(|z| z.re).collect();
                let im: Vec<f64> = e.iter().map(|z| z.im).collect();
                for (part, he) in [(&re, h.apply(&re)), (&im, h.apply(&im))] {
                    for (a, b) in he.iter().zip(part.iter()) {
                        assert!((a - lambda * b).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn morse_indices() {
        assert_eq!(morse_index(4, 1).unwrap(), 0);
        assert_eq!(morse_index(5, 2).unwrap(), 2);
        for n in 3..30 {
            for m in 1..n {
                if 2 * m == n {
                    continue;
                }
                assert_eq!(morse_index(n, m).unwrap(), morse_index_by_threshold(n, m).unwrap());
            }
        }
    }

    #[test]
    fn certificates() {
        let c = instability_certificate(5, 2, 1.0).unwrap();
        assert!((regular_edge_length(5, 2, 1.0) - 1.902113).abs() < 1e-6);
        assert!((c.coefficient + 5.4288).abs() < 1e-4);
        assert!(c.destabilizing);
        let c = instability_certificate(5, 1, 1.0).unwrap();
        assert!((c.coefficient - 0.620541).abs() < 1e-6);
        assert!(!c.destabilizing);
        let identity = 4.0 / regular_edge_length(5, 1, 1.0) * (PI / 5.0).sin().powi(2) * (PI / 5.0).tan().powi(2);
        assert!((c.coefficient - identity).abs() < 1e-14);
    }

    #[test]
    fn fourier_of_regular_polygons() {
        let sq = square();
        let modes = fourier_decompose(&sq).unwrap();
        assert!((modes.coefficient(1) - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        for j in 2..=4 {
            assert!(modes.coefficient(j).norm() < 1e-13);
        }
        let star = regular_polygon(&RegularPolygonSpec::new(5, 2, 2.0)).unwrap();
        let modes = fourier_decompose(&star).unwrap();
        for j in 1..=5 {
            let expect = if j == 2 { 2.0 } else { 0.0 };
            assert!((modes.coefficient(j) - Complex64::new(expect, 0.0)).norm() < 1e-13);
        }
        let open = DiscreteCurve::from_xy(&[(0.0, 0.0), (1.0, 0.0)], false, Sigma::Negative).unwrap();
        assert_eq!(fourier_decompose(&open).unwrap_err(), CurveError::OpenCurve);
    }
}
