//! Closed-form regions attached to `W(C_{ψ,φ})`, with exact membership
//! predicates and support functions for comparison against sweeps.

mod compare;
mod theorems;

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::PolarRationalAngle;
use crate::geometry;

pub use compare::{hull_excess, region_in_hull_margin, sampled_hausdorff};
pub use theorems::{
    classify_unit_a, fixed_point_ellipse, nilpotent_disk, rank_one_region, unimodular_region, zero_witness,
    EllipseMode, UnitRootClass, WitnessCase, ZeroWitness, DEFAULT_MAX_EXPONENT,
};

/// Identifiers of the claims a run can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "P2.1-lit")]
    FixedPointEllipseLiteral,
    #[serde(rename = "P2.1-corr")]
    FixedPointEllipseCorrected,
    #[serde(rename = "T2.2")]
    ZeroWitness,
    #[serde(rename = "T2.3")]
    NilpotentDisk,
    #[serde(rename = "R2.4")]
    RankOne,
    #[serde(rename = "T3.1a")]
    UnimodularRootOfUnity,
    #[serde(rename = "T3.1b")]
    UnimodularIrrational,
    #[serde(rename = "T3.1c")]
    UnimodularTranslation,
    #[serde(rename = "E2.5a")]
    ExampleExponentialWeight,
    #[serde(rename = "E2.5b")]
    ExampleVanishingWeight,
    #[serde(rename = "E3.2a")]
    ExampleQuarterTurn,
    #[serde(rename = "E3.2b")]
    ExampleIrrationalTurn,
    #[serde(rename = "E3.2c")]
    ExampleTranslation,
}

impl ClaimId {
    pub const ALL: [ClaimId; 13] = [
        ClaimId::FixedPointEllipseLiteral,
        ClaimId::FixedPointEllipseCorrected,
        ClaimId::ZeroWitness,
        ClaimId::NilpotentDisk,
        ClaimId::RankOne,
        ClaimId::UnimodularRootOfUnity,
        ClaimId::UnimodularIrrational,
        ClaimId::UnimodularTranslation,
        ClaimId::ExampleExponentialWeight,
        ClaimId::ExampleVanishingWeight,
        ClaimId::ExampleQuarterTurn,
        ClaimId::ExampleIrrationalTurn,
        ClaimId::ExampleTranslation,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            ClaimId::FixedPointEllipseLiteral => "P2.1-lit",
            ClaimId::FixedPointEllipseCorrected => "P2.1-corr",
            ClaimId::ZeroWitness => "T2.2",
            ClaimId::NilpotentDisk => "T2.3",
            ClaimId::RankOne => "R2.4",
            ClaimId::UnimodularRootOfUnity => "T3.1a",
            ClaimId::UnimodularIrrational => "T3.1b",
            ClaimId::UnimodularTranslation => "T3.1c",
            ClaimId::ExampleExponentialWeight => "E2.5a",
            ClaimId::ExampleVanishingWeight => "E2.5b",
            ClaimId::ExampleQuarterTurn => "E3.2a",
            ClaimId::ExampleIrrationalTurn => "E3.2b",
            ClaimId::ExampleTranslation => "E3.2c",
        }
    }

    /// Whether the claimed region is known to lie inside `W` (`Inner`) or to
    /// equal `W` up to closure (`Exact`). Only the `Exact` direction
    /// `W(T_N) ⊆ region` is provable for a truncation.
    pub fn role(&self) -> RegionRole {
        match self {
            ClaimId::RankOne
            | ClaimId::UnimodularRootOfUnity
            | ClaimId::UnimodularIrrational
            | ClaimId::UnimodularTranslation
            | ClaimId::ExampleQuarterTurn
            | ClaimId::ExampleIrrationalTurn
            | ClaimId::ExampleTranslation => RegionRole::Exact,
            _ => RegionRole::Inner,
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionRole {
    Inner,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionKind {
    /// Closed elliptical disk; `major`, `minor` are full axis lengths.
    Ellipse {
        f1: Complex64,
        f2: Complex64,
        major: f64,
        minor: f64,
    },
    Disk {
        center: Complex64,
        radius: f64,
        open: bool,
    },
    PolygonHull {
        vertices: Vec<Complex64>,
    },
    /// `scale·𝔻 ∪ {scale·a^m : m ≥ 0}`.
    DiskPlusOrbit {
        scale: Complex64,
        orbit_generator: PolarRationalAngle,
    },
    Segment {
        from: Complex64,
        to: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub claim: Option<ClaimId>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedRegion {
    #[serde(flatten)]
    pub kind: RegionKind,
    pub provenance: Provenance,
}

const ORBIT_SEARCH: u64 = 10_000;
const SEGMENT_TOL: f64 = 1e-12;

impl PredictedRegion {
    pub fn new(kind: RegionKind, claim: Option<ClaimId>, detail: impl Into<String>) -> Self {
        Self {
            kind,
            provenance: Provenance {
                claim,
                detail: detail.into(),
                scale: None,
            },
        }
    }

    pub fn with_scale(mut self, scale: Complex64) -> Self {
        self.provenance.scale = Some(scale);
        self
    }

    pub fn claim(&self) -> Option<ClaimId> {
        self.provenance.claim
    }

    /// `max_{w ∈ closure} Re(e^{−iθ}·w)`.
    pub fn support(&self, theta: f64) -> f64 {
        let u = Complex64::from_polar(1.0, -theta);
        match &self.kind {
            RegionKind::Ellipse { f1, f2, major, minor } => {
                let center = (f1 + f2) * 0.5;
                let dir = if f1 == f2 { 0.0 } else { (f2 - f1).arg() };
                let (sa, sb) = (0.5 * major, 0.5 * minor);
                let (s, c) = (theta - dir).sin_cos();
                (u * center).re + (sa * sa * c * c + sb * sb * s * s).sqrt()
            }
            RegionKind::Disk { center, radius, .. } => (u * center).re + radius,
            RegionKind::PolygonHull { vertices } => geometry::support_of_points(vertices, theta),
            RegionKind::DiskPlusOrbit { scale, .. } => scale.norm(),
            RegionKind::Segment { from, to } => geometry::support_of_points(&[*from, *to], theta),
        }
    }

    /// Angles where the support function has kinks (polygon and segment edge
    /// normals); smooth regions return none.
    pub fn kink_angles(&self) -> Vec<f64> {
        match &self.kind {
            RegionKind::PolygonHull { vertices } => geometry::edge_normal_angles(&geometry::convex_hull(vertices)),
            RegionKind::Segment { from, to } => geometry::edge_normal_angles(&[*from, *to]),
            _ => Vec::new(),
        }
    }

    /// Signed Euclidean distance to the boundary of the closure: negative
    /// inside, positive outside.
    pub fn signed_distance(&self, w: Complex64) -> f64 {
        match &self.kind {
            RegionKind::Disk { center, radius, .. } => (w - center).norm() - radius,
            RegionKind::DiskPlusOrbit { scale, .. } => w.norm() - scale.norm(),
            RegionKind::PolygonHull { vertices } => {
                geometry::signed_distance_to_convex(&geometry::convex_hull(vertices), w)
            }
            RegionKind::Segment { from, to } => geometry::distance_to_segment(w, *from, *to),
            RegionKind::Ellipse { .. } => self.support_distance(w),
        }
    }

    /// `sup_θ (Re(e^{−iθ}w) − h(θ))`, the signed distance of a point to a
    /// convex body, by grid search plus golden-section refinement.
    fn support_distance(&self, w: Complex64) -> f64 {
        const GRID: usize = 2048;
        let f = |t: f64| (Complex64::from_polar(1.0, -t) * w).re - self.support(t);
        let step = TAU / GRID as f64;
        let mut best_t = 0.0;
        let mut best = f64::NEG_INFINITY;
        for i in 0..GRID {
            let t = i as f64 * step;
            let v = f(t);
            if v > best {
                best = v;
                best_t = t;
            }
        }
        let (mut lo, mut hi) = (best_t - step, best_t + step);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if f(m1) < f(m2) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        best.max(f(0.5 * (lo + hi)))
    }

    /// Exact membership in the region as stated (open disks exclude their
    /// boundary; the orbit part of a disk-plus-orbit is matched to `1e-12`).
    pub fn contains(&self, w: Complex64) -> bool {
        match &self.kind {
            RegionKind::Ellipse { f1, f2, major, .. } => (w - f1).norm() + (w - f2).norm() <= *major,
            RegionKind::Disk { center, radius, open } => {
                let d = (w - center).norm();
                if *open {
                    d < *radius
                } else {
                    d <= *radius
                }
            }
            RegionKind::PolygonHull { vertices } => {
                geometry::convex_combination(&geometry::convex_hull(vertices), w).is_some()
            }
            RegionKind::Segment { from, to } => {
                let d = to - from;
                let scale = from.norm().max(to.norm()).max(1.0);
                if d.norm() == 0.0 {
                    return (w - from).norm() <= SEGMENT_TOL * scale;
                }
                let off = geometry::cross(*from, *to, w).abs() / d.norm();
                let t = ((w - from) * d.conj()).re / d.norm_sqr();
                off <= SEGMENT_TOL * scale && (-SEGMENT_TOL..=1.0 + SEGMENT_TOL).contains(&t)
            }
            RegionKind::DiskPlusOrbit { scale, orbit_generator } => {
                let r = scale.norm();
                if w.norm() < r {
                    return true;
                }
                if scale.norm() == 0.0 {
                    return w.norm() == 0.0;
                }
                let u = w / scale;
                if (u.norm() - 1.0).abs() > SEGMENT_TOL {
                    return false;
                }
                let target = u.arg();
                let step = orbit_generator.angle().radians();
                (0..ORBIT_SEARCH).any(|m| {
                    let diff = (m as f64 * step - target).rem_euclid(TAU);
                    diff.min(TAU - diff) <= SEGMENT_TOL
                })
            }
        }
    }

    /// Boundary points for plotting, `count` per smooth curve.
    pub fn outline(&self, count: usize) -> Vec<Complex64> {
        match &self.kind {
            RegionKind::Ellipse { f1, f2, major, minor } => {
                let center = (f1 + f2) * 0.5;
                let dir = Complex64::from_polar(1.0, if f1 == f2 { 0.0 } else { (f2 - f1).arg() });
                (0..count)
                    .map(|i| {
                        let t = TAU * i as f64 / count as f64;
                        center + dir * Complex64::new(0.5 * major * t.cos(), 0.5 * minor * t.sin())
                    })
                    .collect()
            }
            RegionKind::Disk { center, radius, .. } => (0..count)
                .map(|i| center + Complex64::from_polar(*radius, TAU * i as f64 / count as f64))
                .collect(),
            RegionKind::DiskPlusOrbit { scale, .. } => (0..count)
                .map(|i| Complex64::from_polar(scale.norm(), TAU * i as f64 / count as f64))
                .collect(),
            RegionKind::PolygonHull { vertices } => geometry::convex_hull(vertices),
            RegionKind::Segment { from, to } => vec![*from, *to],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RegionKind::Ellipse { .. } => "ellipse",
            RegionKind::Disk { .. } => "disk",
            RegionKind::PolygonHull { .. } => "polygon_hull",
            RegionKind::DiskPlusOrbit { .. } => "disk_plus_orbit",
            RegionKind::Segment { .. } => "segment",
        }
    }
}
