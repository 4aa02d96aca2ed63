//! The TreadmillSled transform and its inverse.
//!
//! The TreadmillSled of a unit-speed curve alpha is
//! gamma = -(<alpha, alpha'>, <alpha, n>): the trace of the plane origin when
//! the moving plane carrying alpha keeps alpha(t) pinned to the origin with
//! alpha'(t) pointing along +x. It is invariant under rotations of alpha
//! about the origin and under orientation-preserving reparametrization, and
//! preserves the distance to the origin sample by sample.
//!
//! A curve gamma = (xi1, xi2) is a TreadmillSled exactly when
//! xi2' = -f xi1 for a continuous f with xi2 f - xi1' > 0, and then
//! alpha(t) = -Rot(G(t)) gamma(t) for any antiderivative G of f, unique up
//! to a rotation about the origin. The reconstruction speed is
//! |alpha'| = xi2 f - xi1', which is where the positivity requirement
//! comes from.

use crate::error::{Error, Result};
use crate::geometry::{fd_weights, reparam_arclength, ArcCurve, Vec2};

/// Sampled TreadmillSled path: parameter values and plane points.
#[derive(Debug, Clone)]
pub struct TmsCurve {
    params: Vec<f64>,
    points: Vec<Vec2>,
}

/// The inverse transform refuses input closer to the vertical axis than
/// this fraction of the curve scale (the reconstruction blows up there).
pub const XI1_MIN_RATIO: f64 = 1e-8;
/// Slack allowed on the positivity requirement to absorb finite-difference
/// noise at samples where it is near zero.
pub const POSITIVITY_TOL: f64 = -1e-9;

impl TmsCurve {
    pub fn new(params: Vec<f64>, points: Vec<Vec2>) -> Result<Self> {
        if params.len() < 4 {
            return Err(Error::TooFewPoints { got: params.len() });
        }
        assert_eq!(params.len(), points.len(), "params/points length mismatch");
        for i in 1..params.len() {
            if params[i].is_nan() || params[i - 1].is_nan() || params[i] <= params[i - 1] {
                return Err(Error::NonMonotoneParams { index: i });
            }
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        Ok(Self { params, points })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }
}

/// Forward transform of an arc-length sampled curve.
///
/// |gamma(s)| = |alpha(s)| at every sample, exactly: both are built from the
/// same position via orthonormal frames.
pub fn tms_forward(curve: &ArcCurve) -> TmsCurve {
    let params = curve.samples().iter().map(|c| c.s).collect();
    let points = curve
        .samples()
        .iter()
        .map(|c| Vec2::new(-c.pos.dot(c.tangent), -c.pos.dot(c.normal)))
        .collect();
    TmsCurve { params, points }
}

/// Reconstruct the curve whose TreadmillSled is `gamma`.
///
/// f = -xi2'/xi1 by finite differences, G by cumulative quadrature with
/// G(t0) = 0 (composite Simpson on uniform grids, trapezoid otherwise), then
/// alpha = -Rot(G) gamma, re-parametrized by arc length. The rotation
/// normalization G(t0) = 0 picks one representative of the
/// unique-up-to-rotation solution family; see [`tms_inverse_with_phase`].
pub fn tms_inverse(gamma: &TmsCurve) -> Result<ArcCurve> {
    tms_inverse_with_phase(gamma, 0.0)
}

/// [`tms_inverse`] with G(t0) = `phase`; the output differs from the
/// phase-zero reconstruction by a rigid rotation of `phase` about the origin.
pub fn tms_inverse_with_phase(gamma: &TmsCurve, phase: f64) -> Result<ArcCurve> {
    let n = gamma.len();
    let scale = gamma.points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if let Some(i) = gamma
        .points
        .iter()
        .position(|p| p.x.abs() < XI1_MIN_RATIO * scale)
    {
        return Err(Error::CrossesVerticalAxis { index: i });
    }

    let dxi = differentiate(&gamma.params, &gamma.points);
    let mut f = Vec::with_capacity(n);
    for (i, (d, p)) in dxi.iter().zip(&gamma.points).enumerate() {
        let fi = -d.y / p.x;
        let speed = p.y * fi - d.x;
        if speed <= POSITIVITY_TOL {
            return Err(Error::NotATreadmillSled { index: i });
        }
        f.push(fi);
    }

    let g = cumulative_integral(&gamma.params, &f);
    let alpha: Vec<Vec2> = (0..n)
        .map(|i| -(gamma.points[i].rotated(g[i] + phase)))
        .collect();
    reparam_arclength(&alpha, false)
}

/// Total rotation G(t_end) - G(t_0) accumulated by the reconstruction.
pub fn tms_inverse_rotation(gamma: &TmsCurve) -> Result<f64> {
    let n = gamma.len();
    let scale = gamma.points.iter().map(|p| p.norm()).fold(0.0, f64::max);
    if let Some(i) = gamma
        .points
        .iter()
        .position(|p| p.x.abs() < XI1_MIN_RATIO * scale)
    {
        return Err(Error::CrossesVerticalAxis { index: i });
    }
    let dxi = differentiate(&gamma.params, &gamma.points);
    let f: Vec<f64> = (0..n).map(|i| -dxi[i].y / gamma.points[i].x).collect();
    Ok(*cumulative_integral(&gamma.params, &f).last().unwrap())
}

/// Inverse for a constant TreadmillSled.
///
/// Only points on the vertical axis qualify: (0, a) is the TreadmillSled of
/// the origin-centered circle of radius |a|, counterclockwise for a > 0 and
/// clockwise for a < 0. Returned sampled with `samples` points.
pub fn tms_inverse_point(p: Vec2, samples: usize) -> Result<ArcCurve> {
    if p.x != 0.0 {
        return Err(Error::NotATreadmillSled { index: 0 });
    }
    if p.y == 0.0 {
        return Err(Error::OriginHasNoAngle);
    }
    let r = p.y.abs();
    let dir = p.y.signum();
    let n = samples.max(4);
    let pts: Vec<Vec2> = (0..n)
        .map(|i| {
            let t = dir * 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            Vec2::new(r * t.cos(), r * t.sin())
        })
        .collect();
    reparam_arclength(&pts, true)
}

/// How well the forward transform of `curve` satisfies the Frenet-derived
/// identities xi1' = -1 + kappa xi2 and xi2' = -kappa xi1.
///
/// Near zero for any genuinely arc-length parametrized curve; a curve whose
/// stored parameter is not arc length fails loudly.
pub fn tms_frenet_residual(curve: &ArcCurve) -> f64 {
    let gamma = tms_forward(curve);
    let dxi = differentiate_wrapped(&gamma.params, &gamma.points, curve);
    curve
        .samples()
        .iter()
        .zip(gamma.points.iter().zip(dxi.iter()))
        .map(|(c, (xi, d))| {
            (d.x + 1.0 - c.curvature * xi.y).abs() + (d.y + c.curvature * xi.x).abs()
        })
        .fold(0.0, f64::max)
}

/// Per-sample derivative of a sampled plane path by 3-point stencils,
/// one-sided at the ends.
fn differentiate(params: &[f64], points: &[Vec2]) -> Vec<Vec2> {
    let n = params.len();
    (0..n)
        .map(|i| {
            let (lo, hi) = if i == 0 {
                (0, 2)
            } else if i == n - 1 {
                (n - 3, n - 1)
            } else {
                (i - 1, i + 1)
            };
            let offsets: Vec<f64> = (lo..=hi).map(|j| params[j] - params[i]).collect();
            let w = fd_weights(&offsets, 1);
            let mut acc = Vec2::default();
            for (k, j) in (lo..=hi).enumerate() {
                acc = acc + points[j] * w[1][k];
            }
            acc
        })
        .collect()
}

/// Like [`differentiate`], but wrapping across the seam of closed curves so
/// every sample gets a centered stencil.
fn differentiate_wrapped(params: &[f64], points: &[Vec2], curve: &ArcCurve) -> Vec<Vec2> {
    if !curve.is_closed() {
        return differentiate(params, points);
    }
    let n = params.len();
    let first = curve.samples().first().unwrap().pos;
    let last = curve.samples().last().unwrap().pos;
    let seam = (first - last).norm();
    (0..n)
        .map(|i| {
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            let back = if i == 0 {
                seam
            } else {
                params[i] - params[prev]
            };
            let fwd = if next == 0 {
                seam
            } else {
                params[next] - params[i]
            };
            let w = fd_weights(&[-back, 0.0, fwd], 1);
            points[prev] * w[1][0] + points[i] * w[1][1] + points[next] * w[1][2]
        })
        .collect()
}

/// Cumulative integral of sampled values with result[0] = 0.
///
/// On uniform grids each increment integrates the parabola through three
/// neighboring samples (composite-Simpson accuracy); non-uniform grids fall
/// back to the trapezoid rule.
fn cumulative_integral(params: &[f64], values: &[f64]) -> Vec<f64> {
    let n = params.len();
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    let h0 = params[1] - params[0];
    let uniform = params
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h0).abs() <= 1e-9 * h0.abs());
    if uniform && n >= 3 {
        for i in 0..n - 1 {
            let inc = if i == 0 {
                h0 * (5.0 * values[0] + 8.0 * values[1] - values[2]) / 12.0
            } else {
                h0 * (-values[i - 1] + 8.0 * values[i] + 5.0 * values[i + 1]) / 12.0
            };
            out.push(out[i] + inc);
        }
    } else {
        for i in 0..n - 1 {
            let h = params[i + 1] - params[i];
            out.push(out[i] + 0.5 * h * (values[i] + values[i + 1]));
        }
    }
    out
}
