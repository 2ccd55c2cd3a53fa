//! Shared helpers for the integration tests: random curve generators and a
//! dense symmetric eigensolver used as an independent spectral oracle.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use discrete_curves::{DiscreteCurve, Sigma, Vec2};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_sigma(rng: &mut StdRng) -> Sigma {
    if rng.gen_bool(0.5) {
        Sigma::Negative
    } else {
        Sigma::Positive
    }
}

/// Star-shaped polygon with jittered angles and radii in `[0.7, 1.3]`,
/// random orientation, sigma and placement.
pub fn random_closed_curve(rng: &mut StdRng, n: usize) -> DiscreteCurve {
    let center = Vec2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let scale = rng.gen_range(0.5..2.0);
    let phase = rng.gen_range(0.0..TAU);
    let mut points: Vec<Vec2> = (0..n)
        .map(|k| {
            let angle = phase + TAU * (k as f64 + rng.gen_range(-0.3..0.3)) / n as f64;
            let r = scale * rng.gen_range(0.7..1.3);
            center + r * Vec2::new(angle.cos(), angle.sin())
        })
        .collect();
    if rng.gen_bool(0.5) {
        points.reverse();
    }
    DiscreteCurve::new(points, true, random_sigma(rng)).unwrap()
}

/// Equilateral closed polygon close to `Gamma^{m,n}` with edge length `l`:
/// directions are jittered and the last two are solved for closure.
pub fn random_uniform_curve(rng: &mut StdRng, n: usize, m: usize, l: f64) -> DiscreteCurve {
    assert!(n >= 4);
    loop {
        let mut dirs: Vec<Vec2> = (0..n - 2)
            .map(|k| {
                let a = TAU * (m * k) as f64 / n as f64 + rng.gen_range(-0.15..0.15);
                Vec2::new(a.cos(), a.sin())
            })
            .collect();
        let gap: Vec2 = dirs.iter().sum();
        let g = gap.norm();
        if g >= 2.0 || g == 0.0 {
            continue;
        }
        let mid = -0.5 * gap;
        let perp = Vec2::new(-gap.y, gap.x) / g * (1.0 - g * g / 4.0).sqrt();
        // Pick the solution that continues the turning direction of Gamma^{m,n}.
        let target = TAU * (m * (n - 2)) as f64 / n as f64;
        let expect = Vec2::new(target.cos(), target.sin());
        let (u, w) = if (mid + perp).dot(&expect) > (mid - perp).dot(&expect) {
            (mid + perp, mid - perp)
        } else {
            (mid - perp, mid + perp)
        };
        dirs.push(u);
        dirs.push(w);
        let mut p = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut points = Vec::with_capacity(n);
        for d in &dirs {
            points.push(p);
            p += l * d;
        }
        let sigma = random_sigma(rng);
        if let Ok(c) = DiscreteCurve::new(points, true, sigma) {
            if c.cusp_vertices().is_empty() && c.turning_angles().iter().all(|t| t.abs() < PI - 0.2) {
                return c;
            }
        }
    }
}

/// Open polyline with jittered direction and edge lengths in `[0.5, 1.5]`.
pub fn random_open_curve(rng: &mut StdRng, n: usize) -> DiscreteCurve {
    let mut p = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut heading = rng.gen_range(0.0..TAU);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        points.push(p);
        heading += rng.gen_range(-1.2..1.2);
        p += rng.gen_range(0.5..1.5) * Vec2::new(heading.cos(), heading.sin());
    }
    DiscreteCurve::new(points, false, random_sigma(rng)).unwrap()
}

pub fn random_scalars(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_vectors(rng: &mut StdRng, n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|_| Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn zero_mean(mut v: Vec<f64>) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
    v
}

/// Turning angle computed from scratch: `sigma * atan2(cross, dot)` of
/// consecutive edge vectors.
pub fn oracle_angle(curve: &DiscreteCurve, k: usize) -> f64 {
    let n = curve.vertex_count();
    let p = curve.points();
    let a = p[k] - p[(k + n - 1) % n];
    let b = p[(k + 1) % n] - p[k];
    curve.sigma().value() * (a.x * b.y - a.y * b.x).atan2(a.dot(&b))
}

pub fn oracle_length(points: &[Vec2]) -> f64 {
    let n = points.len();
    (0..n).map(|k| (points[(k + 1) % n] - points[k]).norm()).sum()
}

/// `-sigma` times the shoelace area.
pub fn oracle_volume(points: &[Vec2], sigma: Sigma) -> f64 {
    let n = points.len();
    let shoelace: f64 = (0..n)
        .map(|k| {
            let (a, b) = (points[k], points[(k + 1) % n]);
            a.x * b.y - a.y * b.x
        })
        .sum::<f64>()
        / 2.0;
    -sigma.value() * shoelace
}

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let total: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-30 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Central second difference of `f` at 0.
pub fn second_difference(f: impl Fn(f64) -> f64, h: f64) -> f64 {
    (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h)
}

pub fn shifted(points: &[Vec2], field: &[Vec2], t: f64) -> Vec<Vec2> {
    points.iter().zip(field).map(|(p, v)| p + t * v).collect()
}
