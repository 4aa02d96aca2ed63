//! Central force field descriptors and evaluation.
//!
//! A central force acts along the ray from the origin with signed magnitude
//! F(r): positive repels, negative attracts. Power laws F(r) = eps * m * r^n
//! cover the cases with closed-form ramp families; `icho` is the attractive
//! inverse-first-power field F(r) = -m/r.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Sign of a power-law force (+1 repulsive, -1 attractive) and of the two
/// logarithmic-spiral ramp branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone)]
enum ForceKind {
    PowerLaw { epsilon: Sign, exponent: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A central force field with particle mass attached.
///
/// Immutable and shareable across threads; custom profiles must be pure.
#[derive(Clone)]
pub struct CentralForce {
    kind: ForceKind,
    mass: f64,
}

impl fmt::Debug for CentralForce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ForceKind::PowerLaw { epsilon, exponent } => f
                .debug_struct("CentralForce")
                .field("epsilon", epsilon)
                .field("exponent", exponent)
                .field("mass", &self.mass)
                .finish(),
            ForceKind::Custom(_) => f
                .debug_struct("CentralForce")
                .field("profile", &"<custom>")
                .field("mass", &self.mass)
                .finish(),
        }
    }
}

impl CentralForce {
    /// F(r) = eps * m * r^n.
    pub fn power_law(epsilon: Sign, exponent: f64, mass: f64) -> Result<Self> {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mass",
                value: mass,
            });
        }
        if !exponent.is_finite() {
            return Err(Error::InvalidParameter {
                name: "exponent",
                value: exponent,
            });
        }
        Ok(Self {
            kind: ForceKind::PowerLaw { epsilon, exponent },
            mass,
        })
    }

    /// The inverse central harmonic oscillator F(r) = -m/r with m = 1.
    pub fn icho() -> Self {
        Self::power_law(Sign::Minus, -1.0, 1.0).unwrap()
    }

    /// A custom radial profile. The profile must be nonzero everywhere on
    /// (0, inf); in debug builds a log-spaced scan flags sign changes.
    pub fn custom<F>(mass: f64, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mass",
                value: mass,
            });
        }
        if cfg!(debug_assertions) {
            let mut last_sign = 0.0f64;
            for k in -30..=30 {
                let r = 10f64.powf(k as f64 / 10.0);
                let f = profile(r);
                if f != 0.0 {
                    let s = f.signum();
                    debug_assert!(
                        last_sign == 0.0 || s == last_sign,
                        "custom force profile changes sign near r = {r}"
                    );
                    last_sign = s;
                }
            }
        }
        Ok(Self {
            kind: ForceKind::Custom(Arc::new(profile)),
            mass,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Power-law parameters, if this is a power law.
    pub fn power_params(&self) -> Option<(Sign, f64)> {
        match self.kind {
            ForceKind::PowerLaw { epsilon, exponent } => Some((epsilon, exponent)),
            ForceKind::Custom(_) => None,
        }
    }

    /// Parse the CLI force spec: `icho` or `power:eps=<+1|-1>,n=<real>[,m=<real>]`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "icho" {
            return Ok(Self::icho());
        }
        let body = spec
            .strip_prefix("power:")
            .ok_or_else(|| Error::SpecParse(format!("unknown force spec `{spec}`")))?;
        let mut epsilon = None;
        let mut exponent = None;
        let mut mass = 1.0;
        for part in body.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::SpecParse(format!("expected key=value in `{part}`")))?;
            match key.trim() {
                "eps" => {
                    epsilon = Some(match value.trim() {
                        "+1" | "1" => Sign::Plus,
                        "-1" => Sign::Minus,
                        other => {
                            return Err(Error::SpecParse(format!(
                                "eps must be +1 or -1, got `{other}`"
                            )))
                        }
                    })
                }
                "n" => {
                    exponent = Some(parse_num(value, "n")?);
                }
                "m" => {
                    mass = parse_num(value, "m")?;
                }
                other => return Err(Error::SpecParse(format!("unknown force key `{other}`"))),
            }
        }
        let epsilon = epsilon.ok_or_else(|| Error::SpecParse("missing eps".into()))?;
        let exponent = exponent.ok_or_else(|| Error::SpecParse("missing n".into()))?;
        Self::power_law(epsilon, exponent, mass)
    }
}

fn parse_num(s: &str, name: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::SpecParse(format!("bad number for {name}: `{s}`")))
}

/// Signed force magnitude at radius `r`.
pub fn force_eval(force: &CentralForce, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::NonpositiveRadius { r });
    }
    Ok(match &force.kind {
        ForceKind::PowerLaw { epsilon, exponent } => {
            // integer-exponent special cases keep m/r and m*r exact
            let magnitude = if *exponent == -1.0 {
                force.mass / r
            } else if *exponent == 1.0 {
                force.mass * r
            } else if *exponent == 0.0 {
                force.mass
            } else {
                force.mass * r.powf(*exponent)
            };
            epsilon.value() * magnitude
        }
        ForceKind::Custom(profile) => profile(r),
    })
}
