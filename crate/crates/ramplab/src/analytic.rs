//! Closed-form constant-speed ramp families for the inverse central
//! harmonic oscillator F(r) = -m/r, and their asymptotic classification.
//!
//! Four families cover everything:
//!
//! * `CircleOrigin` — any circle centered at the origin, at v = 1 only.
//! * `V1` — the non-circular v = 1 ramps
//!   alpha(t) = e^{-mu t} (cos L, sin L), L = mu ln(cos(t+u)/cos(u)),
//!   on t in (pi/2 - u, 3 pi/2 - u); the TreadmillSled is the logarithmic
//!   spiral piece e^{-mu t} (-cos(t+u), sin(t+u)).
//! * `LogSpiral` — for v != 1 the two spiral ramps
//!   alpha(t) = +-(e^t/(mu v^2)) (cos(r0 t) + r0 sin(r0 t), sin(r0 t) - r0 cos(r0 t)),
//!   whose TreadmillSleds lie on the half-lines through
//!   a = (1/(mu v^2)) (-1, r0).
//! * `GeneralPolar` — every other v != 1 ramp up to rotation and dilation:
//!   alpha(phi) = r(phi) (-cos Theta, sin Theta) with r from the polar
//!   closed form and Theta = mu v^2 (B phi - ln(B sin phi + cos phi)) / (1 + B^2).
//!
//! Every non-spiral v != 1 ramp converges to one of the two spirals; it is
//! unbounded for v > 1 and bounded for v < 1. At v = 1 the ramps are circles
//! or curves trapped between two concentric circles.

use crate::dynamics::{halfline_solutions, polar_params, polar_radius, POLAR_EDGE_CLAMP};
use crate::error::{Error, Result};
use crate::forces::Sign;
use crate::geometry::{point_polyline_distance, reparam_arclength, ArcCurve, Vec2};
use crate::ramp::RampConfig;

/// Relative amount trimmed off each end of an open family domain before
/// sampling; the curves wind without bound toward the untrimmed endpoints.
pub const DOMAIN_SHRINK: f64 = 1e-3;

/// Open parameter domain of the non-circular v = 1 family.
pub fn v1_domain(u: f64) -> (f64, f64) {
    use std::f64::consts::FRAC_PI_2;
    (FRAC_PI_2 - u, 3.0 * FRAC_PI_2 - u)
}

/// Point of the non-circular v = 1 ramp with launch direction angle `u`.
///
/// Normalized so alpha(0) = (1, 0) with alpha'(0) along (cos u, sin u);
/// u must lie strictly inside (pi/2, 3 pi/2) so that cos(t+u) < 0 on the
/// domain (u = pi/2 degenerates to the unit circle).
pub fn ramp_v1(u: f64, mu: f64, t: f64) -> Result<Vec2> {
    use std::f64::consts::FRAC_PI_2;
    if !(u > FRAC_PI_2 && u < 3.0 * FRAC_PI_2) {
        return Err(Error::UOutOfRange { u });
    }
    if mu <= 0.0 || !mu.is_finite() {
        return Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
        });
    }
    let (lo, hi) = v1_domain(u);
    if !(t > lo && t < hi) {
        return Err(Error::TOutOfDomain { t, lo, hi });
    }
    let ratio = (t + u).cos() / u.cos();
    debug_assert!(ratio > 0.0);
    let l = mu * ratio.ln();
    let damp = (-mu * t).exp();
    Ok(Vec2::new(damp * l.cos(), damp * l.sin()))
}

/// Point of one of the two logarithmic-spiral ramps for v != 1.
pub fn spiral_ramp(cfg: &RampConfig, sign: Sign, t: f64) -> Result<Vec2> {
    if cfg.v() == 1.0 {
        return Err(Error::VEqualsOne);
    }
    let v2 = cfg.v() * cfg.v();
    let r0 = 1.0 / (cfg.mu() * (1.0 - v2));
    let scale = sign.value() * t.exp() / (cfg.mu() * v2);
    let (s, c) = (r0 * t).sin_cos();
    Ok(Vec2::new(scale * (c + r0 * s), scale * (s - r0 * c)))
}

/// Angular coordinate of the general (non-spiral) v != 1 ramp.
pub fn general_theta(phi: f64, cfg: &RampConfig) -> Result<f64> {
    let params = polar_params(cfg)?;
    let (lo, hi) = params.domain;
    if !(phi > lo && phi < hi) {
        return Err(Error::PhiOutOfDomain { phi, lo, hi });
    }
    let phi = phi.clamp(lo + POLAR_EDGE_CLAMP, hi - POLAR_EDGE_CLAMP);
    let d = params.b * phi.sin() + phi.cos();
    assert!(
        d > 0.0,
        "positivity factor must be positive inside the domain"
    );
    Ok(cfg.mu() * cfg.v() * cfg.v() * (params.b * phi - d.ln()) / (params.b * params.b + 1.0))
}

/// Point of the general (non-spiral) ramp for v != 1, normalized to
/// alpha(0) = (-1, 0); every other such ramp is a rotation and dilation of
/// this one.
pub fn general_ramp(phi: f64, cfg: &RampConfig) -> Result<Vec2> {
    let r = polar_radius(phi, cfg)?;
    let theta = general_theta(phi, cfg)?;
    Ok(Vec2::new(-r * theta.cos(), r * theta.sin()))
}

/// Long-range behavior of the v != 1 ramps, and the v = 1 dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticClass {
    /// v > 1: non-spiral ramps are unbounded and converge to a spiral ramp.
    UnboundedToSpiral,
    /// v < 1: non-spiral ramps are bounded and converge to a spiral ramp.
    BoundedToSpiral,
    /// v = 1: ramps are origin-centered circles or curves trapped between
    /// two concentric circles, with spiral TreadmillSleds.
    CirclesAndSpirals,
}

impl AsymptoticClass {
    pub fn name(self) -> &'static str {
        match self {
            AsymptoticClass::UnboundedToSpiral => "unbounded-to-spiral",
            AsymptoticClass::BoundedToSpiral => "bounded-to-spiral",
            AsymptoticClass::CirclesAndSpirals => "circles-and-spirals",
        }
    }
}

pub fn classify_asymptotics(cfg: &RampConfig) -> AsymptoticClass {
    if cfg.v() > 1.0 {
        AsymptoticClass::UnboundedToSpiral
    } else if cfg.v() < 1.0 {
        AsymptoticClass::BoundedToSpiral
    } else {
        AsymptoticClass::CirclesAndSpirals
    }
}

/// Distance of the general ramp at each `phi` to the spiral ramp it
/// converges to near the end of `phis`. The backing check for the
/// asymptotic classification: distances decrease toward the domain boundary.
///
/// Rotating a ramp about the origin yields another ramp with the same
/// TreadmillSled, and for a logarithmic spiral a rotation is the same thing
/// as a dilation along itself, so the limit curve is a spiral ramp whose
/// phase must be identified rather than assumed: the member is anchored so
/// that it passes through the outermost sample, and the profile then
/// measures how the remaining samples approach it.
pub fn distance_to_spiral_profile(cfg: &RampConfig, phis: &[f64]) -> Result<Vec<f64>> {
    let (_, minus) = halfline_solutions(cfg)?;
    let r0 = minus.r0;
    let pts: Vec<Vec2> = phis
        .iter()
        .map(|&phi| general_ramp(phi, cfg))
        .collect::<Result<_>>()?;
    let r_min = pts.iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min);
    let r_max = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
    // every spiral ramp with this pitch is theta(r) = r0 ln r + c in polar
    // form; anchor c at the last sample
    let anchor = *pts.last().expect("need at least one sample");
    let c = anchor.angle() - r0 * anchor.norm().ln();
    let n = 20_000;
    let ln_lo = (0.2 * r_min).ln();
    let ln_hi = (5.0 * r_max).ln();
    let spiral: Vec<Vec2> = (0..n)
        .map(|i| {
            let ln_r = ln_lo + (ln_hi - ln_lo) * i as f64 / (n - 1) as f64;
            let r = ln_r.exp();
            Vec2::new(r * (r0 * ln_r + c).cos(), r * (r0 * ln_r + c).sin())
        })
        .collect();
    Ok(pts
        .iter()
        .map(|&p| point_polyline_distance(p, &spiral))
        .collect())
}

/// Kind-specific parameters of a ramp family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind {
    CircleOrigin { radius: f64 },
    V1 { u: f64 },
    LogSpiral { sign: Sign },
    GeneralPolar { rotation: f64, dilation: f64 },
}

/// A closed-form ramp family together with its friction/speed configuration.
#[derive(Debug, Clone, Copy)]
pub struct RampFamily {
    cfg: RampConfig,
    kind: FamilyKind,
}

impl RampFamily {
    pub fn new(cfg: RampConfig, kind: FamilyKind) -> Result<Self> {
        match kind {
            FamilyKind::CircleOrigin { radius } => {
                if cfg.v() != 1.0 {
                    return Err(Error::InvalidParameter {
                        name: "v (circles need v = 1)",
                        value: cfg.v(),
                    });
                }
                if radius.is_nan() || radius <= 0.0 {
                    return Err(Error::NonpositiveRadius { r: radius });
                }
            }
            FamilyKind::V1 { u } => {
                use std::f64::consts::FRAC_PI_2;
                if cfg.v() != 1.0 {
                    return Err(Error::InvalidParameter {
                        name: "v (this family needs v = 1)",
                        value: cfg.v(),
                    });
                }
                if !(u > FRAC_PI_2 && u < 3.0 * FRAC_PI_2) {
                    return Err(Error::UOutOfRange { u });
                }
            }
            FamilyKind::LogSpiral { .. } => {
                if cfg.v() == 1.0 {
                    return Err(Error::VEqualsOne);
                }
            }
            FamilyKind::GeneralPolar { dilation, .. } => {
                if cfg.v() == 1.0 {
                    return Err(Error::VEqualsOne);
                }
                if dilation.is_nan() || dilation <= 0.0 {
                    return Err(Error::NonpositiveScale { c: dilation });
                }
            }
        }
        Ok(Self { cfg, kind })
    }

    pub fn cfg(&self) -> &RampConfig {
        &self.cfg
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, FamilyKind::CircleOrigin { .. })
    }

    /// Evaluate the family at parameter `t` (the polar angle for circles and
    /// the general family).
    pub fn point(&self, t: f64) -> Result<Vec2> {
        match self.kind {
            FamilyKind::CircleOrigin { radius } => {
                Ok(Vec2::new(radius * t.cos(), radius * t.sin()))
            }
            FamilyKind::V1 { u } => ramp_v1(u, self.cfg.mu(), t),
            FamilyKind::LogSpiral { sign } => spiral_ramp(&self.cfg, sign, t),
            FamilyKind::GeneralPolar { rotation, dilation } => {
                Ok(general_ramp(t, &self.cfg)?.rotated(rotation) * dilation)
            }
        }
    }

    /// Default sampling range: the full circle, the open domains trimmed by
    /// [`DOMAIN_SHRINK`], or a radius window of roughly e^-3..e for spirals.
    pub fn default_range(&self) -> Result<(f64, f64)> {
        Ok(match self.kind {
            FamilyKind::CircleOrigin { .. } => (0.0, 2.0 * std::f64::consts::PI),
            FamilyKind::V1 { u } => shrink(v1_domain(u)),
            FamilyKind::LogSpiral { .. } => (-3.0, 1.0),
            FamilyKind::GeneralPolar { .. } => shrink(polar_params(&self.cfg)?.domain),
        })
    }

    /// Sample the family at arc spacing `h` over its default range.
    pub fn sample(&self, h: f64) -> Result<ArcCurve> {
        let (t0, t1) = self.default_range()?;
        self.sample_range(t0, t1, h)
    }

    /// Sample the family at (approximately) uniform arc spacing `h` over
    /// `[t0, t1]`. Points are exact closed-form evaluations; only the
    /// spacing is approximate. Spiral curves are emitted inward-oriented so
    /// that the attractive-force admissibility condition holds as sampled.
    pub fn sample_range(&self, t0: f64, t1: f64, h: f64) -> Result<ArcCurve> {
        if h <= 0.0 || !h.is_finite() {
            return Err(Error::InvalidParameter {
                name: "h",
                value: h,
            });
        }
        if t1.is_nan() || t0.is_nan() || t1 <= t0 {
            return Err(Error::InvalidParameter {
                name: "t1 (must exceed t0)",
                value: t1,
            });
        }
        if let FamilyKind::CircleOrigin { radius } = self.kind {
            let n = ((t1 - t0) * radius / h).round().max(4.0) as usize;
            let closed = (t1 - t0 - 2.0 * std::f64::consts::PI).abs() < 1e-12;
            let pts: Vec<Vec2> = (0..if closed { n } else { n + 1 })
                .map(|i| {
                    let t = t0 + (t1 - t0) * i as f64 / n as f64;
                    Vec2::new(radius * t.cos(), radius * t.sin())
                })
                .collect();
            return reparam_arclength(&pts, closed);
        }
        let mut pts = sample_arclength(|t| self.point(t), t0, t1, h)?;
        if matches!(self.kind, FamilyKind::LogSpiral { .. }) {
            pts.reverse();
        }
        reparam_arclength(&pts, false)
    }
}

fn shrink((lo, hi): (f64, f64)) -> (f64, f64) {
    let margin = DOMAIN_SHRINK * (hi - lo);
    (lo + margin, hi - margin)
}

/// Sample a parametric curve at approximately uniform arc spacing.
///
/// See [`sample_arclength_params`]; this drops the parameter values.
pub fn sample_arclength<F>(f: F, t0: f64, t1: f64, h: f64) -> Result<Vec<Vec2>>
where
    F: Fn(f64) -> Result<Vec2>,
{
    Ok(sample_arclength_params(f, t0, t1, h)?.1)
}

/// Sample a parametric curve at approximately uniform arc spacing, returning
/// the chosen parameter values alongside the points.
///
/// A dense parameter grid supplies the arc-length-to-parameter map; target
/// parameters are found by linear interpolation and the curve is then
/// evaluated exactly there, so sample positions carry no interpolation error.
pub fn sample_arclength_params<F>(f: F, t0: f64, t1: f64, h: f64) -> Result<(Vec<f64>, Vec<Vec2>)>
where
    F: Fn(f64) -> Result<Vec2>,
{
    let probe = 8192;
    let total = |n: usize| -> Result<(Vec<f64>, Vec<Vec2>)> {
        let ts: Vec<f64> = (0..=n)
            .map(|i| t0 + (t1 - t0) * i as f64 / n as f64)
            .collect();
        let ps: Vec<Vec2> = ts.iter().map(|&t| f(t)).collect::<Result<_>>()?;
        Ok((ts, ps))
    };
    let (_, ps) = total(probe)?;
    let length: f64 = ps.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
    let n_target = ((length / h).round() as usize).max(4);
    let n_dense = (16 * n_target).clamp(probe, 2_000_000);
    let (ts, ps) = total(n_dense)?;
    let mut cum = Vec::with_capacity(n_dense + 1);
    cum.push(0.0);
    for w in ps.windows(2) {
        let last = *cum.last().unwrap();
        cum.push(last + (w[1] - w[0]).norm());
    }
    let total_len = *cum.last().unwrap();
    let mut out_t = Vec::with_capacity(n_target + 1);
    let mut out_p = Vec::with_capacity(n_target + 1);
    let mut seg = 0usize;
    for j in 0..=n_target {
        let target = total_len * j as f64 / n_target as f64;
        while seg + 1 < cum.len() - 1 && cum[seg + 1] < target {
            seg += 1;
        }
        let span = cum[seg + 1] - cum[seg];
        let frac = if span > 0.0 {
            (target - cum[seg]) / span
        } else {
            0.0
        };
        let t = ts[seg] + (ts[seg + 1] - ts[seg]) * frac.clamp(0.0, 1.0);
        out_t.push(t);
        out_p.push(f(t)?);
    }
    Ok((out_t, out_p))
}

/// Parse the CLI family spec:
/// `circle:R=<r>` | `v1:u=<rad>` | `spiral:sign=<+|->` | `polar:[rot=<rad>][,scale=<k>]`.
pub fn parse_family_spec(spec: &str) -> Result<FamilyKind> {
    let spec = spec.trim();
    let (head, body) = spec.split_once(':').unwrap_or((spec, ""));
    let kv = |part: &str| -> Result<(String, String)> {
        part.split_once('=')
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .ok_or_else(|| Error::SpecParse(format!("expected key=value in `{part}`")))
    };
    match head {
        "circle" => {
            let (k, v) = kv(body)?;
            if k != "R" {
                return Err(Error::SpecParse(format!("circle expects R=<r>, got `{k}`")));
            }
            let radius = parse_num(&v, "R")?;
            Ok(FamilyKind::CircleOrigin { radius })
        }
        "v1" => {
            let (k, v) = kv(body)?;
            if k != "u" {
                return Err(Error::SpecParse(format!("v1 expects u=<rad>, got `{k}`")));
            }
            Ok(FamilyKind::V1 {
                u: parse_num(&v, "u")?,
            })
        }
        "spiral" => {
            let (k, v) = kv(body)?;
            if k != "sign" {
                return Err(Error::SpecParse(format!(
                    "spiral expects sign=<+|->, got `{k}`"
                )));
            }
            let sign = match v.as_str() {
                "+" | "+1" => Sign::Plus,
                "-" | "-1" => Sign::Minus,
                other => {
                    return Err(Error::SpecParse(format!(
                        "sign must be + or -, got `{other}`"
                    )))
                }
            };
            Ok(FamilyKind::LogSpiral { sign })
        }
        "polar" => {
            let mut rotation = 0.0;
            let mut dilation = 1.0;
            if !body.is_empty() {
                for part in body.split(',') {
                    let (k, v) = kv(part)?;
                    match k.as_str() {
                        "rot" => rotation = parse_num(&v, "rot")?,
                        "scale" => dilation = parse_num(&v, "scale")?,
                        other => {
                            return Err(Error::SpecParse(format!("unknown polar key `{other}`")))
                        }
                    }
                }
            }
            Ok(FamilyKind::GeneralPolar { rotation, dilation })
        }
        other => Err(Error::SpecParse(format!("unknown family `{other}`"))),
    }
}

fn parse_num(s: &str, name: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::SpecParse(format!("bad number for {name}: `{s}`")))
}
