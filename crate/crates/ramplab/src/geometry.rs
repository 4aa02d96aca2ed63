//! Plane-curve primitives: vectors, arc-length sampling, Frenet frames,
//! finite-difference curvature, and polar conversion.
//!
//! Curves are represented as ordered samples of an arc-length parametrized
//! path. [`reparam_arclength`] builds an [`ArcCurve`] from raw points by
//! cumulative chord length; tangents come from centered 3-point finite
//! differences on the (possibly non-uniform) arc grid, the normal is the
//! counterclockwise quarter turn of the tangent, and curvature is the
//! second difference of position projected on the normal. Endpoints of open
//! curves use one-sided second-order stencils so the whole sampled domain
//! stays usable; closed curves wrap.

use crate::error::{Error, Result};

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Scalar z-component of the 2D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise quarter turn, see [`rotate90`].
    pub fn rotate90(self) -> Self {
        rotate90(self)
    }

    /// Counterclockwise rotation by `angle` radians.
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// The counterclockwise quarter-turn operator (x, y) -> (-y, x).
///
/// Applied to a unit tangent it yields the curve normal; the side of that
/// normal is the side the ramp material lies on.
pub fn rotate90(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// Polar coordinates of `p` with radius > 0 and angle in (-pi, pi].
pub fn to_polar(p: Vec2) -> Result<(f64, f64)> {
    if p.x == 0.0 && p.y == 0.0 {
        return Err(Error::OriginHasNoAngle);
    }
    let mut theta = p.y.atan2(p.x);
    if theta == -std::f64::consts::PI {
        theta = std::f64::consts::PI;
    }
    Ok((p.norm(), theta))
}

pub fn from_polar(r: f64, theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    Vec2::new(r * c, r * s)
}

/// One sample of an arc-length parametrized curve.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    /// Arc length from the start of the curve.
    pub s: f64,
    pub pos: Vec2,
    /// Unit tangent.
    pub tangent: Vec2,
    /// Unit normal, always `rotate90(tangent)`.
    pub normal: Vec2,
    /// Signed curvature, the normal component of the second derivative.
    pub curvature: f64,
}

/// An arc-length sampled plane curve with Frenet data at every sample.
#[derive(Debug, Clone)]
pub struct ArcCurve {
    samples: Vec<CurveSample>,
    closed: bool,
}

/// Relative chord-vs-arc fidelity required of externally supplied samples.
pub const ARC_FIDELITY_TOL: f64 = 1e-3;

impl ArcCurve {
    /// Wrap pre-computed samples without re-deriving frames.
    ///
    /// Only ordering and finiteness are checked; the caller is responsible
    /// for the arc-length fidelity of `s`. Curves built through
    /// [`reparam_arclength`] satisfy it by construction.
    pub fn from_raw_samples(samples: Vec<CurveSample>, closed: bool) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::TooFewPoints { got: samples.len() });
        }
        for (i, w) in samples.windows(2).enumerate() {
            if w[1].s.is_nan() || w[0].s.is_nan() || w[1].s <= w[0].s {
                return Err(Error::NonMonotoneParams { index: i + 1 });
            }
        }
        if let Some(i) = samples.iter().position(|c| !c.pos.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        Ok(Self { samples, closed })
    }

    pub fn samples(&self) -> &[CurveSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn positions(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.samples.iter().map(|c| c.pos)
    }

    /// Total length, including the closing chord for closed curves.
    pub fn total_length(&self) -> f64 {
        let span = self.samples.last().map_or(0.0, |c| c.s);
        if self.closed {
            let first = self.samples.first().unwrap().pos;
            let last = self.samples.last().unwrap().pos;
            span + (first - last).norm()
        } else {
            span
        }
    }

    /// Same trace traversed the other way: tangents, normals and curvature
    /// all change sign, and an everywhere-inadmissible ramp candidate
    /// becomes admissible.
    pub fn reversed(&self) -> Self {
        let s_end = self.samples.last().unwrap().s;
        let samples = self
            .samples
            .iter()
            .rev()
            .map(|c| CurveSample {
                s: s_end - c.s,
                pos: c.pos,
                tangent: -c.tangent,
                normal: -c.normal,
                curvature: -c.curvature,
            })
            .collect();
        Self {
            samples,
            closed: self.closed,
        }
    }

    /// All positions scaled by `k` about the origin (frames rebuilt).
    pub fn scaled(&self, k: f64) -> Result<Self> {
        let pts: Vec<Vec2> = self.positions().map(|p| p * k).collect();
        reparam_arclength(&pts, self.closed)
    }
}

/// Build an [`ArcCurve`] from ordered points.
///
/// Arc length is the cumulative chord length, so the stored `s` is consistent
/// with the positions by construction. Needs at least 4 distinct points; a
/// repeated consecutive point (including the seam of a closed curve) is
/// rejected.
pub fn reparam_arclength(points: &[Vec2], closed: bool) -> Result<ArcCurve> {
    if points.len() < 4 {
        return Err(Error::TooFewPoints { got: points.len() });
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite { index: i });
    }
    let n = points.len();
    let mut s = Vec::with_capacity(n);
    s.push(0.0);
    for i in 1..n {
        let chord = (points[i] - points[i - 1]).norm();
        if chord == 0.0 {
            return Err(Error::DegenerateSegment { index: i });
        }
        s.push(s[i - 1] + chord);
    }
    let seam = (points[0] - points[n - 1]).norm();
    if closed && seam == 0.0 {
        return Err(Error::DegenerateSegment { index: 0 });
    }

    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let (offsets, idx) = stencil_at(i, n, &s, seam, closed);
        let d1 = derivative(&offsets, &idx, points, 1);
        let tangent = d1.normalized();
        let normal = rotate90(tangent);
        // Second derivative: 3-point interior stencil, 4-point one-sided at
        // the ends of open curves.
        let curvature = if closed || (i > 0 && i + 1 < n) {
            derivative(&offsets, &idx, points, 2).dot(normal)
        } else {
            let (offsets4, idx4) = one_sided4(i, n, &s);
            derivative(&offsets4, &idx4, points, 2).dot(normal)
        };
        samples.push(CurveSample {
            s: s[i],
            pos: points[i],
            tangent,
            normal,
            curvature,
        });
    }
    ArcCurve::from_raw_samples(samples, closed)
}

/// Signed curvature at a sample. Indices wrap on closed curves.
pub fn curvature_fd(curve: &ArcCurve, index: usize) -> Result<f64> {
    let n = curve.len();
    let i = if curve.is_closed() { index % n } else { index };
    if i >= n {
        return Err(Error::IndexOutOfRange { index, len: n });
    }
    Ok(curve.samples()[i].curvature)
}

/// 3-point stencil around sample `i`: arc offsets relative to `s[i]` and the
/// sample indices, wrapping across the seam for closed curves.
fn stencil_at(i: usize, n: usize, s: &[f64], seam: f64, closed: bool) -> (Vec<f64>, Vec<usize>) {
    if closed {
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        let back = if i == 0 { seam } else { s[i] - s[prev] };
        let fwd = if next == 0 { seam } else { s[next] - s[i] };
        (vec![-back, 0.0, fwd], vec![prev, i, next])
    } else if i == 0 {
        (vec![0.0, s[1] - s[0], s[2] - s[0]], vec![0, 1, 2])
    } else if i == n - 1 {
        (
            vec![s[n - 3] - s[i], s[n - 2] - s[i], 0.0],
            vec![n - 3, n - 2, n - 1],
        )
    } else {
        (
            vec![s[i - 1] - s[i], 0.0, s[i + 1] - s[i]],
            vec![i - 1, i, i + 1],
        )
    }
}

/// 4-point one-sided stencil for endpoint second derivatives.
fn one_sided4(i: usize, n: usize, s: &[f64]) -> (Vec<f64>, Vec<usize>) {
    if i == 0 {
        ((0..4).map(|j| s[j] - s[0]).collect(), (0..4).collect())
    } else {
        (
            (n - 4..n).map(|j| s[j] - s[i]).collect(),
            (n - 4..n).collect(),
        )
    }
}

fn derivative(offsets: &[f64], idx: &[usize], points: &[Vec2], order: usize) -> Vec2 {
    let w = fd_weights(offsets, order);
    let mut acc = Vec2::default();
    for (k, &j) in idx.iter().enumerate() {
        acc = acc + points[j] * w[order][k];
    }
    acc
}

/// Finite-difference weights on an arbitrary stencil (Fornberg's recursion).
///
/// `offsets` are the node positions relative to the evaluation point.
/// Returns one weight row per derivative order `0..=m_max`.
pub(crate) fn fd_weights(offsets: &[f64], m_max: usize) -> Vec<Vec<f64>> {
    let n = offsets.len();
    assert!(n > m_max, "stencil too small for derivative order");
    let mut c = vec![vec![0.0; m_max + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    for i in 1..n {
        let mn = i.min(m_max);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    (0..=m_max)
        .map(|k| (0..n).map(|i| c[i][k]).collect())
        .collect()
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from `p` to the polyline through `poly`.
pub fn point_polyline_distance(p: Vec2, poly: &[Vec2]) -> f64 {
    assert!(!poly.is_empty());
    if poly.len() == 1 {
        return (p - poly[0]).norm();
    }
    poly.windows(2)
        .map(|w| point_segment_distance(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// max over `a` of the distance to the polyline `b`.
pub fn directed_hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.iter()
        .map(|&p| point_polyline_distance(p, b))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines.
pub fn polyline_hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
