use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::jacobi::max_eigenpair_with_basis;
use crate::error::{Error, Result};
use crate::geometry;
use crate::matrix::CMatrix;

/// Width of the boundary-ambiguous band.
pub const DEFAULT_TOL: f64 = 1e-7;
/// Consecutive angles solved from one another's eigenvectors.
const WARM_RUN: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldOfValues {
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
    pub boundary: Vec<Complex64>,
}

/// Samples the support function of `W(t)` at `θ_j = 2πj/k`.
pub fn sweep(t: &CMatrix, k: usize) -> Result<FieldOfValues> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 sweep angles, got {k}")));
    }
    if !t.is_square() || t.rows() == 0 {
        return Err(Error::InvalidInput(format!("matrix is {}x{}, expected square", t.rows(), t.cols())));
    }
    // Angles are split into fixed-size runs; within a run each eigenproblem
    // starts from the previous angle's eigenvectors. The split does not
    // depend on the thread count, so output is reproducible.
    let runs: Vec<Vec<(f64, f64, Complex64)>> = (0..k.div_ceil(WARM_RUN))
        .into_par_iter()
        .map(|r| {
            let mut basis: Option<CMatrix> = None;
            (r * WARM_RUN..((r + 1) * WARM_RUN).min(k))
                .map(|j| {
                    let theta = TAU * j as f64 / k as f64;
                    let h = t.rotated_hermitian_part(theta);
                    let (top, v, vectors) = max_eigenpair_with_basis(&h, basis.as_ref())?;
                    basis = vectors;
                    Ok((theta, top, t.quadratic_form(&v)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let samples = runs.into_iter().flatten();

    let mut fov = FieldOfValues {
        angles: Vec::with_capacity(k),
        support: Vec::with_capacity(k),
        boundary: Vec::with_capacity(k),
    };
    for (theta, h, p) in samples {
        fov.angles.push(theta);
        fov.support.push(h);
        fov.boundary.push(p);
    }
    Ok(fov)
}

impl FieldOfValues {
    /// Counter-clockwise inner hull of the boundary points.
    pub fn hull(&self) -> Vec<Complex64> {
        geometry::convex_hull(&self.boundary)
    }

    pub fn area(&self) -> f64 {
        geometry::polygon_area(&self.hull())
    }

    pub fn max_support(&self) -> f64 {
        self.support.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max_j |Re(e^{−iθ_j}p_j) − h_j|`.
    pub fn support_residual(&self) -> f64 {
        self.angles
            .iter()
            .zip(&self.support)
            .zip(&self.boundary)
            .map(|((&t, &h), &p)| ((Complex64::from_polar(1.0, -t) * p).re - h).abs())
            .fold(0.0, f64::max)
    }

    /// Boundary points in sweep order turn left (or go straight) at every
    /// vertex, with `slack` relative to the squared diameter.
    pub fn is_convex_position(&self, slack: f64) -> bool {
        let scale = self.boundary.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1e-300);
        let eps = slack * scale * scale;
        let mut pts: Vec<Complex64> = Vec::with_capacity(self.boundary.len());
        for &p in &self.boundary {
            if pts.last().is_none_or(|&q: &Complex64| (p - q).norm() > slack * scale) {
                pts.push(p);
            }
        }
        while pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() <= slack * scale {
            pts.pop();
        }
        let n = pts.len();
        if n < 3 {
            return true;
        }
        (0..n).all(|i| geometry::cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) >= -eps)
    }

    /// Largest violation `Re(e^{−iθ_j}w) − h_j` of the sampled half-planes,
    /// with its angle.
    pub fn outer_violation(&self, w: Complex64) -> (f64, f64) {
        self.angles
            .iter()
            .zip(&self.support)
            .map(|(&t, &h)| ((Complex64::from_polar(1.0, -t) * w).re - h, t))
            .fold((f64::NEG_INFINITY, 0.0), |best, cur| if cur.0 > best.0 { cur } else { best })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipStatus {
    Inside,
    Outside,
    BoundaryAmbiguous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// `w = Σ weight·point` over hull vertices.
    ConvexCombination(Vec<(Complex64, f64)>),
    SeparatingAngle(f64),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    /// Positive on the certified side: depth inside the hull for `Inside`,
    /// half-plane violation for `Outside`, hull depth (possibly negative)
    /// otherwise.
    pub margin: f64,
    pub certificate: Certificate,
}

pub fn membership(fov: &FieldOfValues, w: Complex64, tol: f64) -> MembershipVerdict {
    let (violation, theta) = fov.outer_violation(w);
    if violation > tol {
        return MembershipVerdict {
            status: MembershipStatus::Outside,
            margin: violation,
            certificate: Certificate::SeparatingAngle(theta),
        };
    }
    let hull = fov.hull();
    let depth = -geometry::signed_distance_to_convex(&hull, w);
    if depth > tol {
        if let Some(weights) = geometry::convex_combination(&hull, w) {
            return MembershipVerdict {
                status: MembershipStatus::Inside,
                margin: depth,
                certificate: Certificate::ConvexCombination(weights.into_iter().map(|(i, t)| (hull[i], t)).collect()),
            };
        }
    }
    MembershipVerdict {
        status: MembershipStatus::BoundaryAmbiguous,
        margin: depth,
        certificate: Certificate::None,
    }
}
