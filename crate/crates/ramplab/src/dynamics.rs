//! The autonomous plane systems governing TreadmillSleds of constant-speed
//! ramps under the inverse central harmonic oscillator, their equilibria and
//! invariant half-lines, the polar closed form of the non-line trajectories,
//! a fixed-step RK4 oracle, and phase-portrait sampling.
//!
//! Three systems share their trajectory sets off the origin:
//!
//! * `General` — the TreadmillSled system in the original arc-length clock:
//!   xi1' = -1 + (xi1 + mu xi2) xi2 / (v^2 mu |xi|^2),
//!   xi2' = -(xi1 + mu xi2) xi1 / (v^2 mu |xi|^2).
//! * `LinearV1` — the v = 1 case after dropping a positive time rescale:
//!   phi1' = -mu phi1 + phi2, phi2' = -phi1 - mu phi2. The origin is a
//!   stable focus (eigenvalues -mu +- i).
//! * `Quadratic` — the v != 1 case after clearing the denominator:
//!   phi1' = -mu v^2 phi1^2 + mu (1 - v^2) phi2^2 + phi1 phi2,
//!   phi2' = -phi1^2 - mu phi1 phi2. Smooth everywhere, homogeneous of
//!   degree two, with a single degenerate equilibrium at the origin and two
//!   invariant half-lines along +-a, a = (1/(mu v^2)) (-1, r0),
//!   r0 = 1/(mu (1 - v^2)).

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::ramp::RampConfig;

/// A point of the TreadmillSled plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseState {
    pub phi1: f64,
    pub phi2: f64,
}

impl PhaseState {
    pub const fn new(phi1: f64, phi2: f64) -> Self {
        Self { phi1, phi2 }
    }

    pub fn norm(self) -> f64 {
        self.phi1.hypot(self.phi2)
    }

    pub fn to_vec2(self) -> Vec2 {
        Vec2::new(self.phi1, self.phi2)
    }

    fn add_scaled(self, other: Self, k: f64) -> Self {
        Self::new(self.phi1 + k * other.phi1, self.phi2 + k * other.phi2)
    }
}

/// Which of the three systems a trajectory belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    General,
    LinearV1,
    Quadratic,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::General => "general",
            SystemKind::LinearV1 => "linear_v1",
            SystemKind::Quadratic => "quadratic",
        }
    }
}

/// A sampled trajectory in the phase plane.
#[derive(Debug, Clone)]
pub struct PhaseTrajectory {
    pub system: SystemKind,
    pub states: Vec<(f64, PhaseState)>,
    pub cfg: RampConfig,
    /// Step size used by the integrator.
    pub h: f64,
}

/// Integration stops when a `General` trajectory gets this close to the
/// origin singularity.
pub const ORIGIN_STOP_RADIUS: f64 = 1e-10;

/// The TreadmillSled system in the arc-length clock. Singular only at the
/// origin.
pub fn vf_general(state: PhaseState, cfg: &RampConfig) -> Result<PhaseState> {
    let n2 = state.phi1 * state.phi1 + state.phi2 * state.phi2;
    if n2 == 0.0 {
        return Err(Error::OriginSingular);
    }
    let q = state.phi1 + cfg.mu() * state.phi2;
    let d = cfg.v() * cfg.v() * cfg.mu() * n2;
    Ok(PhaseState::new(
        -1.0 + q * state.phi2 / d,
        -q * state.phi1 / d,
    ))
}

/// The linear v = 1 system.
pub fn vf_v1(state: PhaseState, mu: f64) -> PhaseState {
    PhaseState::new(-mu * state.phi1 + state.phi2, -state.phi1 - mu * state.phi2)
}

/// Closed-form solution of the linear v = 1 system:
/// e^{-mu t} (c1 cos t + c2 sin t, c2 cos t - c1 sin t).
pub fn solve_v1_closed(c1: f64, c2: f64, mu: f64, t: f64) -> PhaseState {
    let damp = (-mu * t).exp();
    let (s, c) = t.sin_cos();
    PhaseState::new(damp * (c1 * c + c2 * s), damp * (c2 * c - c1 * s))
}

/// The quadratic v != 1 system (same trajectories as `General`, smooth at
/// the origin).
pub fn vf_quadratic(state: PhaseState, cfg: &RampConfig) -> Result<PhaseState> {
    if cfg.v() == 1.0 {
        return Err(Error::VEqualsOne);
    }
    let (mu, v2) = (cfg.mu(), cfg.v() * cfg.v());
    let (p1, p2) = (state.phi1, state.phi2);
    Ok(PhaseState::new(
        -mu * v2 * p1 * p1 + mu * (1.0 - v2) * p2 * p2 + p1 * p2,
        -p1 * p1 - mu * p1 * p2,
    ))
}

/// Equilibrium structure of a system at the given configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumSet {
    /// Every point (0, a) with a != 0 is stationary (general system, v = 1);
    /// each corresponds to an origin-centered circular ramp.
    VerticalAxis,
    /// No equilibria at all (general system, v != 1).
    Empty,
    /// Isolated stable focus at the origin, eigenvalues -mu +- i.
    StableFocusOrigin,
    /// Single degenerate equilibrium at the origin.
    DegenerateOrigin,
}

pub fn equilibria(system: SystemKind, cfg: &RampConfig) -> EquilibriumSet {
    match system {
        SystemKind::General => {
            if cfg.v() == 1.0 {
                EquilibriumSet::VerticalAxis
            } else {
                EquilibriumSet::Empty
            }
        }
        SystemKind::LinearV1 => EquilibriumSet::StableFocusOrigin,
        SystemKind::Quadratic => EquilibriumSet::DegenerateOrigin,
    }
}

/// One of the two invariant half-lines of the quadratic system.
#[derive(Debug, Clone, Copy)]
pub struct HalfLineSolution {
    /// The vector a = (1/(mu v^2)) (-1, r0); the trajectory is sign * a * e^t.
    pub a: Vec2,
    /// r0 = 1/(mu (1 - v^2)).
    pub r0: f64,
    pub sign: f64,
}

impl HalfLineSolution {
    /// Point of the trajectory at parameter t.
    pub fn point_at(&self, t: f64) -> Vec2 {
        self.a * (self.sign * t.exp())
    }
}

/// The two half-line TreadmillSled trajectories, defined only for v != 1.
pub fn halfline_solutions(cfg: &RampConfig) -> Result<(HalfLineSolution, HalfLineSolution)> {
    if cfg.v() == 1.0 {
        return Err(Error::VEqualsOne);
    }
    let v2 = cfg.v() * cfg.v();
    let r0 = 1.0 / (cfg.mu() * (1.0 - v2));
    let a = Vec2::new(-1.0, r0) * (1.0 / (cfg.mu() * v2));
    Ok((
        HalfLineSolution { a, r0, sign: 1.0 },
        HalfLineSolution { a, r0, sign: -1.0 },
    ))
}

/// Constants of the polar closed form and its angular domain.
#[derive(Debug, Clone, Copy)]
pub struct PolarSolutionParams {
    /// A = 1 + mu^2 (v^2 - 1)^2 = 1 + B^2.
    pub a: f64,
    /// B = mu (v^2 - 1).
    pub b: f64,
    /// Open interval (phi_lo, phi_hi) on which cos(phi) + B sin(phi) > 0;
    /// its endpoints are the polar angles of the two half-line solutions.
    pub domain: (f64, f64),
}

/// Evaluation clamps phi this far inside the domain to avoid the endpoint
/// pole of the logarithm.
pub const POLAR_EDGE_CLAMP: f64 = 1e-12;

pub fn polar_params(cfg: &RampConfig) -> Result<PolarSolutionParams> {
    if cfg.v() == 1.0 {
        return Err(Error::VEqualsOne);
    }
    let b = cfg.mu() * (cfg.v() * cfg.v() - 1.0);
    let a = 1.0 + b * b;
    let mid = b.atan();
    let half = std::f64::consts::FRAC_PI_2;
    Ok(PolarSolutionParams {
        a,
        b,
        domain: (mid - half, mid + half),
    })
}

/// Radius of the polar closed form,
/// r(phi) = exp(-mu v^2 phi / A) (cos phi + B sin phi)^(-mu v^2 B / A),
/// normalized to r(0) = 1.
pub fn polar_radius(phi: f64, cfg: &RampConfig) -> Result<f64> {
    let params = polar_params(cfg)?;
    let (lo, hi) = params.domain;
    if !(phi > lo && phi < hi) {
        return Err(Error::PhiOutOfDomain { phi, lo, hi });
    }
    let phi = phi.clamp(lo + POLAR_EDGE_CLAMP, hi - POLAR_EDGE_CLAMP);
    let d = phi.cos() + params.b * phi.sin();
    debug_assert!(d > 0.0, "cos + B sin must be positive inside the domain");
    let mu_v2 = cfg.mu() * cfg.v() * cfg.v();
    Ok((-mu_v2 * phi / params.a - mu_v2 * params.b / params.a * d.ln()).exp())
}

fn eval_system(system: SystemKind, state: PhaseState, cfg: &RampConfig) -> Result<PhaseState> {
    match system {
        SystemKind::General => vf_general(state, cfg),
        SystemKind::LinearV1 => Ok(vf_v1(state, cfg.mu())),
        SystemKind::Quadratic => vf_quadratic(state, cfg),
    }
}

fn rk4_step(system: SystemKind, y: PhaseState, h: f64, cfg: &RampConfig) -> Result<PhaseState> {
    let k1 = eval_system(system, y, cfg)?;
    let k2 = eval_system(system, y.add_scaled(k1, 0.5 * h), cfg)?;
    let k3 = eval_system(system, y.add_scaled(k2, 0.5 * h), cfg)?;
    let k4 = eval_system(system, y.add_scaled(k3, h), cfg)?;
    Ok(PhaseState::new(
        y.phi1 + h / 6.0 * (k1.phi1 + 2.0 * k2.phi1 + 2.0 * k3.phi1 + k4.phi1),
        y.phi2 + h / 6.0 * (k1.phi2 + 2.0 * k2.phi2 + 2.0 * k3.phi2 + k4.phi2),
    ))
}

/// Classic fixed-step fourth-order integration; `h` must be positive (a
/// negative-time trajectory is obtained by integrating the reversed field,
/// see [`phase_portrait`]).
pub fn integrate_rk4(
    system: SystemKind,
    state0: PhaseState,
    cfg: &RampConfig,
    h: f64,
    n_steps: usize,
) -> Result<PhaseTrajectory> {
    assert!(h > 0.0 && h.is_finite(), "step size must be positive");
    let mut states = Vec::with_capacity(n_steps + 1);
    states.push((0.0, state0));
    let mut y = state0;
    for step in 1..=n_steps {
        if system == SystemKind::General && y.norm() < ORIGIN_STOP_RADIUS {
            return Err(Error::StepIntoSingularity { step });
        }
        y = rk4_step(system, y, h, cfg).map_err(|e| match e {
            Error::OriginSingular => Error::StepIntoSingularity { step },
            other => other,
        })?;
        states.push((step as f64 * h, y));
    }
    Ok(PhaseTrajectory {
        system,
        states,
        cfg: *cfg,
        h,
    })
}

/// Axis-aligned rectangle of the phase plane.
#[derive(Debug, Clone, Copy)]
pub struct BBox {
    pub min: Vec2,
    pub max: Vec2,
}

impl BBox {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn center(&self) -> Vec2 {
        (self.min + self.max) * 0.5
    }

    pub fn contains(&self, p: Vec2, margin: f64) -> bool {
        let c = self.center();
        let hw = 0.5 * (self.max.x - self.min.x) * margin;
        let hh = 0.5 * (self.max.y - self.min.y) * margin;
        (p.x - c.x).abs() <= hw && (p.y - c.y).abs() <= hh
    }
}

/// Sample trajectories for a phase portrait.
///
/// Picks `LinearV1` when v = 1 and `Quadratic` otherwise. Seeds default to
/// `seed_count` points on a circle inscribed in `bbox`; each seed is
/// integrated forward and backward until it leaves the box (with a small
/// margin), it reaches the step budget, or the integrator stalls, and the
/// two halves are joined into one polyline through the seed.
pub fn phase_portrait(
    cfg: &RampConfig,
    bbox: &BBox,
    seed_count: usize,
    seeds: Option<&[PhaseState]>,
    h: f64,
    max_steps: usize,
) -> Vec<PhaseTrajectory> {
    assert!(h > 0.0, "step size must be positive");
    let system = if cfg.v() == 1.0 {
        SystemKind::LinearV1
    } else {
        SystemKind::Quadratic
    };
    let seeds: Vec<PhaseState> = match seeds {
        Some(s) => s.to_vec(),
        None => {
            assert!(seed_count >= 2, "need at least two seeds");
            let c = bbox.center();
            let radius = 0.45 * (bbox.max.x - bbox.min.x).min(bbox.max.y - bbox.min.y);
            (0..seed_count)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / seed_count as f64;
                    PhaseState::new(c.x + radius * t.cos(), c.y + radius * t.sin())
                })
                .collect()
        }
    };

    seeds
        .iter()
        .map(|&seed| {
            let fwd = march(system, seed, cfg, h, max_steps, bbox, false);
            let bwd = march(system, seed, cfg, h, max_steps, bbox, true);
            let mut states: Vec<(f64, PhaseState)> =
                bwd.into_iter().rev().map(|(t, s)| (-t, s)).collect();
            states.pop(); // the seed is the head of the forward half
            states.extend(fwd);
            PhaseTrajectory {
                system,
                states,
                cfg: *cfg,
                h,
            }
        })
        .collect()
}

/// Integrate one direction until exit/stall/budget. Backward integration
/// negates the field, which traverses the same trajectory in reverse.
fn march(
    system: SystemKind,
    seed: PhaseState,
    cfg: &RampConfig,
    h: f64,
    max_steps: usize,
    bbox: &BBox,
    backward: bool,
) -> Vec<(f64, PhaseState)> {
    let mut out = vec![(0.0, seed)];
    let mut y = seed;
    for step in 1..=max_steps {
        if system == SystemKind::General && y.norm() < ORIGIN_STOP_RADIUS {
            break;
        }
        let stepped = (|| -> Result<PhaseState> {
            let dir = if backward { -1.0 } else { 1.0 };
            let f = |s: PhaseState| -> Result<PhaseState> {
                let d = eval_system(system, s, cfg)?;
                Ok(PhaseState::new(dir * d.phi1, dir * d.phi2))
            };
            let k1 = f(y)?;
            let k2 = f(y.add_scaled(k1, 0.5 * h))?;
            let k3 = f(y.add_scaled(k2, 0.5 * h))?;
            let k4 = f(y.add_scaled(k3, h))?;
            Ok(PhaseState::new(
                y.phi1 + h / 6.0 * (k1.phi1 + 2.0 * k2.phi1 + 2.0 * k3.phi1 + k4.phi1),
                y.phi2 + h / 6.0 * (k1.phi2 + 2.0 * k2.phi2 + 2.0 * k3.phi2 + k4.phi2),
            ))
        })();
        match stepped {
            Ok(next) if next.phi1.is_finite() && next.phi2.is_finite() => {
                y = next;
                out.push((step as f64 * h, y));
                if !bbox.contains(y.to_vec2(), 1.1) {
                    break;
                }
            }
            _ => break,
        }
    }
    out
}
