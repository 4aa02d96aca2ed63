//! Helpers shared by the integration suites. Each test binary compiles this
//! module separately and uses a subset of it.
#![allow(dead_code)]

use ramplab::{tms_forward, tms_inverse, ArcCurve, Vec2};

/// Every `stride`-th point (always keeping the last).
pub fn thin(points: &[Vec2], stride: usize) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = points.iter().copied().step_by(stride.max(1)).collect();
    if let Some(&last) = points.last() {
        if out.last() != Some(&last) {
            out.push(last);
        }
    }
    out
}

/// Forward-then-inverse TreadmillSled transform, rotation-aligned Hausdorff
/// distance against the original trace.
///
/// The inverse is unique up to a rotation about the origin, so the
/// reconstruction is rotated to match the original's starting direction
/// before comparing. Point sets are thinned for the quadratic-cost distance;
/// the strides keep the polyline sagitta well below the tolerances in use.
pub fn roundtrip_hausdorff(curve: &ArcCurve) -> f64 {
    let gamma = tms_forward(curve);
    let back = tms_inverse(&gamma).expect("forward output must invert");
    let original: Vec<Vec2> = curve.positions().collect();
    let reconstructed: Vec<Vec2> = back.positions().collect();
    let turn = original[0].angle() - reconstructed[0].angle();
    let aligned: Vec<Vec2> = reconstructed.iter().map(|p| p.rotated(turn)).collect();
    let d1 = ramplab::geometry::directed_hausdorff(&thin(&aligned, 25), &thin(&original, 5));
    let d2 = ramplab::geometry::directed_hausdorff(&thin(&original, 25), &thin(&aligned, 5));
    d1.max(d2)
}

/// Hausdorff distance between two traces after thinning.
pub fn trace_distance(a: &[Vec2], b: &[Vec2], query_stride: usize, segment_stride: usize) -> f64 {
    let d1 =
        ramplab::geometry::directed_hausdorff(&thin(a, query_stride), &thin(b, segment_stride));
    let d2 =
        ramplab::geometry::directed_hausdorff(&thin(b, query_stride), &thin(a, segment_stride));
    d1.max(d2)
}
