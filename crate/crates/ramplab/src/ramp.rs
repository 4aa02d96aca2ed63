//! The constant-speed ramp curvature law, admissibility and normal force,
//! residual verification of candidate curves, circular ramps, and dilation.
//!
//! A unit-speed curve alpha with normal n = rotate90(alpha') carries a
//! particle at constant speed v under a central force F and kinetic friction
//! mu exactly when
//!
//! ```text
//! kappa(s) = F(r)/(m v^2 r) * (<alpha, alpha'>/mu + <alpha, n>),   r = |alpha|
//! ```
//!
//! together with the admissibility condition F(r) <alpha, alpha'> / r >= 0,
//! which makes the normal-force magnitude lambda = F(r)<alpha,alpha'>/(mu r)
//! nonnegative. A curve satisfying only the curvature equation becomes a ramp
//! after reversing its orientation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forces::{force_eval, CentralForce, Sign};
use crate::geometry::{rotate90, ArcCurve, Vec2};

/// Friction coefficient and target speed of a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RampConfig {
    mu: f64,
    v: f64,
}

impl RampConfig {
    pub fn new(mu: f64, v: f64) -> Result<Self> {
        if mu <= 0.0 || !mu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
            });
        }
        if v <= 0.0 || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name: "v",
                value: v,
            });
        }
        Ok(Self { mu, v })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn v(&self) -> f64 {
        self.v
    }
}

/// Outcome of verifying a sampled curve against the ramp law.
#[derive(Debug, Clone, Serialize)]
pub struct RampReport {
    /// Largest |residual| over the samples, in curvature units (1/length).
    pub max_residual: f64,
    /// Whether the friction-balance sign condition held at every sample
    /// (after the orientation retry, if one happened).
    pub admissible_everywhere: bool,
    /// Minimum normal-force magnitude lambda over the samples.
    pub min_normal_force: f64,
    /// Set when the curve was inadmissible everywhere as given and the
    /// reversed orientation was verified instead.
    pub orientation_flipped: bool,
    /// Per-sample (arc length, residual).
    #[serde(rename = "series")]
    pub residual_series: Vec<(f64, f64)>,
}

impl RampReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Curvature demanded by the ramp law at one state.
///
/// `tangent` must be unit length; the normal used is `rotate90(tangent)`.
pub fn required_curvature(
    pos: Vec2,
    tangent: Vec2,
    force: &CentralForce,
    cfg: &RampConfig,
) -> Result<f64> {
    let r = pos.norm();
    if r == 0.0 {
        return Err(Error::AtOrigin);
    }
    debug_assert!((tangent.norm() - 1.0).abs() < 1e-9, "tangent must be unit");
    let f = force_eval(force, r)?;
    let radial = pos.dot(tangent);
    let lateral = pos.dot(rotate90(tangent));
    Ok(f / (force.mass() * cfg.v * cfg.v * r) * (radial / cfg.mu + lateral))
}

/// Sign condition of the friction balance and the normal-force magnitude
/// lambda = F(r) <pos, tangent> / (mu r). Admissible means lambda >= 0.
pub fn admissibility_and_normal_force(
    pos: Vec2,
    tangent: Vec2,
    force: &CentralForce,
    cfg: &RampConfig,
) -> Result<(bool, f64)> {
    let r = pos.norm();
    if r == 0.0 {
        return Err(Error::AtOrigin);
    }
    let f = force_eval(force, r)?;
    let q = f * pos.dot(tangent) / r;
    Ok((q >= 0.0, q / cfg.mu))
}

/// Verify a sampled curve against the ramp law with friction.
///
/// The residual at each sample is the finite-difference curvature minus the
/// required curvature. If every sample fails admissibility the reversed
/// orientation is verified instead and `orientation_flipped` is set; a curve
/// where the sign condition holds on only part of the samples is reported
/// with `admissible_everywhere = false` rather than rejected.
pub fn ramp_residual(
    curve: &ArcCurve,
    force: &CentralForce,
    cfg: &RampConfig,
) -> Result<RampReport> {
    check_origin_clearance(curve)?;
    let first = evaluate(curve, force, cfg)?;
    if first.all_inadmissible() {
        let mut report = evaluate(&curve.reversed(), force, cfg)?.into_report();
        report.orientation_flipped = true;
        return Ok(report);
    }
    Ok(first.into_report())
}

/// Frictionless variant: a constant-speed curve under a central force alone
/// must keep |alpha| constant, so the residual is the radial velocity
/// <alpha, alpha'> and lambda comes from the normal balance
/// lambda = m v^2 kappa - F(r) <alpha, n> / r.
pub fn ramp_residual_frictionless(
    curve: &ArcCurve,
    force: &CentralForce,
    cfg: &RampConfig,
) -> Result<RampReport> {
    check_origin_clearance(curve)?;
    type SeriesAndLambdas = (Vec<(f64, f64)>, Vec<f64>);
    let eval = |c: &ArcCurve| -> Result<SeriesAndLambdas> {
        let mut series = Vec::with_capacity(c.len());
        let mut lambdas = Vec::with_capacity(c.len());
        for s in c.samples() {
            let r = s.pos.norm();
            let f = force_eval(force, r)?;
            series.push((s.s, s.pos.dot(s.tangent)));
            lambdas.push(force.mass() * cfg.v * cfg.v * s.curvature - f * s.pos.dot(s.normal) / r);
        }
        Ok((series, lambdas))
    };
    let (series, lambdas) = eval(curve)?;
    // Reversal negates lambda (the ramp sits on the other side); retry when
    // the normal force is negative everywhere.
    let flipped = lambdas.iter().all(|&l| l < 0.0);
    let (series, lambdas) = if flipped {
        eval(&curve.reversed())?
    } else {
        (series, lambdas)
    };
    let max_residual = series.iter().map(|&(_, r)| r.abs()).fold(0.0, f64::max);
    let min_normal_force = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(RampReport {
        max_residual,
        admissible_everywhere: lambdas.iter().all(|&l| l >= -1e-9),
        min_normal_force,
        orientation_flipped: flipped,
        residual_series: series,
    })
}

struct Evaluation {
    series: Vec<(f64, f64)>,
    admissible: Vec<bool>,
    lambdas: Vec<f64>,
}

impl Evaluation {
    fn all_inadmissible(&self) -> bool {
        self.admissible.iter().all(|&a| !a)
    }

    fn into_report(self) -> RampReport {
        let max_residual = self
            .series
            .iter()
            .map(|&(_, r)| r.abs())
            .fold(0.0, f64::max);
        let min_normal_force = self.lambdas.iter().copied().fold(f64::INFINITY, f64::min);
        RampReport {
            max_residual,
            admissible_everywhere: self.admissible.iter().all(|&a| a),
            min_normal_force,
            orientation_flipped: false,
            residual_series: self.series,
        }
    }
}

fn evaluate(curve: &ArcCurve, force: &CentralForce, cfg: &RampConfig) -> Result<Evaluation> {
    let mut series = Vec::with_capacity(curve.len());
    let mut admissible = Vec::with_capacity(curve.len());
    let mut lambdas = Vec::with_capacity(curve.len());
    for sample in curve.samples() {
        let required = required_curvature(sample.pos, sample.tangent, force, cfg)?;
        let (_, lambda) = admissibility_and_normal_force(sample.pos, sample.tangent, force, cfg)?;
        // tangents come from finite differences, so the boundary case
        // <alpha, alpha'> = 0 shows up as roundoff-scale values of either
        // sign; classify with a tolerance relative to the force magnitude
        let f = force_eval(force, sample.pos.norm())?;
        series.push((sample.s, sample.curvature - required));
        admissible.push(lambda * cfg.mu >= -1e-12 * f.abs());
        lambdas.push(lambda);
    }
    Ok(Evaluation {
        series,
        admissible,
        lambdas,
    })
}

fn check_origin_clearance(curve: &ArcCurve) -> Result<()> {
    let scale = curve.positions().map(Vec2::norm).fold(0.0, f64::max);
    for (i, p) in curve.positions().enumerate() {
        if p.norm() <= 1e-12 * scale {
            return Err(Error::CurveThroughOrigin { index: i });
        }
    }
    Ok(())
}

/// Which circles centered at the origin are constant-speed ramps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleRamp {
    /// Every radius works (attractive inverse-first-power law at v = 1).
    AllRadii,
    /// Exactly one radius works.
    Radius(f64),
    /// No circle is a ramp at this speed.
    NoCircle,
}

/// Solve F(R) R + m v^2 = 0 for the circular-ramp radius.
///
/// Power laws are answered in closed form: repulsive laws admit no circles;
/// the attractive law with exponent n has the single radius v^(2/(n+1))
/// unless n = -1, where circles exist (all of them) exactly at v = 1.
/// Custom profiles are solved by bisection over `custom_bracket`.
pub fn circle_ramp_radius(
    force: &CentralForce,
    cfg: &RampConfig,
    custom_bracket: Option<(f64, f64)>,
) -> Result<CircleRamp> {
    if let Some((epsilon, n)) = force.power_params() {
        if epsilon == Sign::Plus {
            return Ok(CircleRamp::NoCircle);
        }
        if n == -1.0 {
            return Ok(if cfg.v == 1.0 {
                CircleRamp::AllRadii
            } else {
                CircleRamp::NoCircle
            });
        }
        return Ok(CircleRamp::Radius(cfg.v.powf(2.0 / (n + 1.0))));
    }
    let (mut lo, mut hi) = custom_bracket.ok_or(Error::NoBracket)?;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::NoBracket);
    }
    let g =
        |r: f64| -> Result<f64> { Ok(force_eval(force, r)? * r + force.mass() * cfg.v * cfg.v) };
    let mut glo = g(lo)?;
    let ghi = g(hi)?;
    if glo == 0.0 {
        return Ok(CircleRamp::Radius(lo));
    }
    if ghi == 0.0 {
        return Ok(CircleRamp::Radius(hi));
    }
    if glo.signum() == ghi.signum() {
        return Err(Error::NoBracket);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid)?;
        if gm == 0.0 || (hi - lo) <= 1e-10 * mid {
            return Ok(CircleRamp::Radius(mid));
        }
        if gm.signum() == glo.signum() {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    Ok(CircleRamp::Radius(0.5 * (lo + hi)))
}

/// Scale a ramp about the origin by `c`, keeping the friction constant.
///
/// For a power law with exponent n the scaled curve verifies at speed
/// c^((n+1)/2) * v, returned alongside the curve; for n = -1 the speed is
/// unchanged. Custom forces have no closed-form speed prediction (`None`).
pub fn dilate_ramp(
    curve: &ArcCurve,
    c: f64,
    force: &CentralForce,
    cfg: &RampConfig,
) -> Result<(ArcCurve, Option<f64>)> {
    if c <= 0.0 || !c.is_finite() {
        return Err(Error::NonpositiveScale { c });
    }
    let scaled = curve.scaled(c)?;
    let speed = force
        .power_params()
        .map(|(_, n)| c.powf((n + 1.0) / 2.0) * cfg.v);
    Ok((scaled, speed))
}
