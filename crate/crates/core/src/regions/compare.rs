use std::f64::consts::TAU;

use num_complex::Complex64;

use super::PredictedRegion;
use crate::geometry;
use crate::numrange::FieldOfValues;

const GRID: usize = 4096;

/// `min_θ (h_hull(θ) − h_region(θ))` over the hull and region edge normals
/// and a uniform grid. Non-negative iff the region lies in the hull (exact for
/// polygonal regions, grid-accurate for smooth ones).
pub fn region_in_hull_margin(region: &PredictedRegion, hull: &[Complex64]) -> f64 {
    let mut angles: Vec<f64> = (0..GRID).map(|i| TAU * i as f64 / GRID as f64).collect();
    angles.extend(geometry::edge_normal_angles(hull));
    angles.extend(region.kink_angles());
    angles
        .iter()
        .map(|&t| geometry::support_of_points(hull, t) - region.support(t))
        .fold(f64::INFINITY, f64::min)
}

/// `max_v d(v, region)` over the given points, with `d` the signed distance;
/// `≤ tol` means every point lies in the closed region up to `tol`.
pub fn hull_excess(points: &[Complex64], region: &PredictedRegion) -> f64 {
    points
        .iter()
        .map(|&v| region.signed_distance(v))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `max_j |h_fov(θ_j) − h_region(θ_j)|`, the Hausdorff distance of the two
/// convex sets measured at the sampled angles.
pub fn sampled_hausdorff(fov: &FieldOfValues, region: &PredictedRegion) -> f64 {
    fov.angles
        .iter()
        .zip(&fov.support)
        .map(|(&t, &h)| (h - region.support(t)).abs())
        .fold(0.0, f64::max)
}
