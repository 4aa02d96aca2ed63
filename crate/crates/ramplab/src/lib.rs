//! Constant-speed ramps under central forces with Coulomb friction.
//!
//! A ramp is a plane curve, together with a choice of normal side, on which
//! a particle subject to a central force F(r) and kinetic friction mu moves
//! at constant speed v. This crate provides:
//!
//! * plane-curve primitives with finite-difference Frenet data ([`geometry`]),
//! * central force descriptors ([`forces`]),
//! * the ramp curvature law, admissibility, and residual verification of
//!   sampled candidate curves ([`ramp`]),
//! * the TreadmillSled transform and its inverse ([`treadmill`]),
//! * the autonomous systems governing TreadmillSleds of ramps for the
//!   inverse central harmonic oscillator F(r) = -m/r, with a fixed-step RK4
//!   oracle and phase-portrait sampling ([`dynamics`]),
//! * the closed-form ramp families for that force ([`analytic`]),
//! * the CSV/JSON file formats used by the command-line tool ([`io`]).

pub mod analytic;
pub mod dynamics;
pub mod error;
pub mod forces;
pub mod geometry;
pub mod io;
pub mod ramp;
pub mod treadmill;

pub use analytic::{
    classify_asymptotics, general_ramp, parse_family_spec, ramp_v1, spiral_ramp, AsymptoticClass,
    FamilyKind, RampFamily,
};
pub use dynamics::{
    equilibria, halfline_solutions, integrate_rk4, phase_portrait, polar_params, polar_radius,
    solve_v1_closed, vf_general, vf_quadratic, vf_v1, BBox, EquilibriumSet, HalfLineSolution,
    PhaseState, PhaseTrajectory, PolarSolutionParams, SystemKind,
};
pub use error::{Error, Result};
pub use forces::{force_eval, CentralForce, Sign};
pub use geometry::{
    curvature_fd, from_polar, polyline_hausdorff, reparam_arclength, rotate90, to_polar, ArcCurve,
    CurveSample, Vec2,
};
pub use ramp::{
    admissibility_and_normal_force, circle_ramp_radius, dilate_ramp, ramp_residual,
    ramp_residual_frictionless, required_curvature, CircleRamp, RampConfig, RampReport,
};
pub use treadmill::{tms_forward, tms_frenet_residual, tms_inverse, tms_inverse_point, TmsCurve};

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
