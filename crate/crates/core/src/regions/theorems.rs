use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ClaimId, PredictedRegion, RegionKind};
use crate::error::{Error, Result};
use crate::fock::{gcd_u64, unimodular_weight, AffineMap, Angle, ConjugationData, EntireSymbol, PolarRationalAngle};
use crate::geometry;
use crate::numrange::ellipse_2x2;
use crate::operator::{compression, sqrt_binomial};

pub const DEFAULT_MAX_EXPONENT: u64 = 10_000;

/// `ψ(p) = 0` test on `q̂_0`.
const ZERO_WEIGHT_TOL: f64 = 1e-12;
/// Rank-one degeneracy: `minor² ≤ tol·(‖ψ‖·‖K_b‖)²`.
const RANK_ONE_PARALLEL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum UnitRootClass {
    One,
    RootOfUnity { order: u64 },
    /// `provable` is false when the angle was only known in floating point.
    NotRootOfUnity { provable: bool },
}

pub fn classify_unit_a(a: &PolarRationalAngle) -> Result<UnitRootClass> {
    if !a.is_unimodular() {
        return Err(Error::Hypothesis(format!("|a| = {} is not 1", a.modulus())));
    }
    Ok(match a.angle() {
        Angle::Exact { num: 0, .. } => UnitRootClass::One,
        Angle::Exact { num, den } => UnitRootClass::RootOfUnity {
            order: exact_order(num, den),
        },
        Angle::Inexact { .. } => UnitRootClass::NotRootOfUnity { provable: false },
    })
}

/// Order of `e^{iπ·num/den}` in the circle group.
fn exact_order(num: i64, den: u64) -> u64 {
    let g = gcd_u64(num.unsigned_abs(), 2 * den);
    2 * den / g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipseMode {
    /// Foci `a^n`, `a^{n+m}` as printed, i.e. assuming `ψ(p) = 1`.
    PaperLiteral,
    /// The exact elliptical range of the compression, foci scaled by `q̂_0`.
    CorrectedCompression,
}

/// Ellipse inside `W(C_{ψ,φ})` from the compression to `span{e_n, e_{n+m}}`
/// when `ψ(p) ≠ 0`.
pub fn fixed_point_ellipse(
    data: &ConjugationData,
    a: &PolarRationalAngle,
    n: usize,
    m: usize,
    mode: EllipseMode,
) -> Result<PredictedRegion> {
    let q0 = data.weight_at_fixed_point();
    if q0.norm() <= ZERO_WEIGHT_TOL {
        return Err(Error::Hypothesis(
            "psi(p) = 0: the compression is nilpotent, use the disk region".into(),
        ));
    }
    let t = compression(data, a, n, m)?;
    let minor = t.bottom_left.norm();
    let (f1, f2, claim, label) = match mode {
        EllipseMode::PaperLiteral => (
            a.pow(n as u64),
            a.pow((n + m) as u64),
            ClaimId::FixedPointEllipseLiteral,
            "foci a^n, a^(n+m) as stated",
        ),
        EllipseMode::CorrectedCompression => (
            t.top_left,
            t.bottom_right,
            ClaimId::FixedPointEllipseCorrected,
            "foci q0*a^n, q0*a^(n+m) of the 2x2 compression",
        ),
    };
    let detail = format!("{label}; n = {n}, m = {m}, q0 = {q0}, q_m = {}", data.qhat[m]);
    if mode == EllipseMode::CorrectedCompression {
        return Ok(PredictedRegion::new(ellipse_2x2(&t)?.kind, Some(claim), detail));
    }
    let kind = if minor == 0.0 {
        RegionKind::Segment { from: f1, to: f2 }
    } else {
        RegionKind::Ellipse {
            f1,
            f2,
            major: ((f1 - f2).norm_sqr() + minor * minor).sqrt(),
            minor,
        }
    };
    Ok(PredictedRegion::new(kind, Some(claim), detail))
}

/// Closed disk at 0 inside `W(C_{ψ,φ})` when `ψ(p) = 0`.
pub fn nilpotent_disk(data: &ConjugationData, a: &PolarRationalAngle, n: usize, m: usize) -> Result<PredictedRegion> {
    let q0 = data.weight_at_fixed_point();
    if q0.norm() > ZERO_WEIGHT_TOL {
        return Err(Error::Hypothesis(format!("psi(p) = {q0} is not zero; use the ellipse region")));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    if data.qhat.len() <= m {
        return Err(Error::InvalidInput(format!("need q-hat up to index {m}")));
    }
    let radius = (data.qhat[m] * a.pow(n as u64)).norm() * sqrt_binomial(n, m) / 2.0;
    Ok(PredictedRegion::new(
        RegionKind::Disk {
            center: Complex64::new(0.0, 0.0),
            radius,
            open: false,
        },
        Some(ClaimId::NilpotentDisk),
        format!("nilpotent compression to span(e_{n}, e_{}), q_m = {}", n + m, data.qhat[m]),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    QuadrantPoints,
    RootOfUnityPolygon,
    RealSegment,
}

/// Eigenvalues `ψ(p)·a^k` whose convex hull contains 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroWitness {
    pub case: WitnessCase,
    pub vertices: Vec<Complex64>,
    pub exponents: Vec<u64>,
    pub contains_zero: bool,
    /// `(vertex index, weight)` pairs writing 0 as a convex combination.
    pub certificate: Option<Vec<(usize, f64)>>,
}

pub fn zero_witness(psi_at_p: Complex64, a: &PolarRationalAngle, max_exponent: u64) -> Result<ZeroWitness> {
    if a.is_zero() || a.modulus() >= 1.0 {
        return Err(Error::Hypothesis(format!("need 0 < |a| < 1, got {}", a.modulus())));
    }
    if psi_at_p.norm() == 0.0 {
        return Err(Error::Hypothesis("psi(p) = 0".into()));
    }
    if a.is_positive_real() {
        return Err(Error::Hypothesis("a is a positive real number".into()));
    }

    let (case, exponents) = if a.is_negative_real() {
        (WitnessCase::RealSegment, vec![1, 0])
    } else {
        match a.angle() {
            Angle::Exact { num, den } => {
                let order = exact_order(num, den);
                (WitnessCase::RootOfUnityPolygon, (0..order).collect())
            }
            Angle::Inexact { .. } => (WitnessCase::QuadrantPoints, quadrant_exponents(&a.angle(), max_exponent)?),
        }
    };

    let vertices: Vec<Complex64> = exponents.iter().map(|&k| psi_at_p * a.pow(k)).collect();
    let hull = geometry::convex_hull(&vertices);
    let certificate = geometry::convex_combination(&hull, Complex64::new(0.0, 0.0)).map(|weights| {
        weights
            .into_iter()
            .map(|(i, t)| (vertices.iter().position(|v| *v == hull[i]).expect("hull point is a vertex"), t))
            .collect::<Vec<_>>()
    });
    let contains_zero = certificate.is_some();
    if !contains_zero {
        return Err(Error::Postcondition(format!(
            "witness vertices {vertices:?} do not surround 0"
        )));
    }
    Ok(ZeroWitness {
        case,
        vertices,
        exponents,
        contains_zero,
        certificate,
    })
}

/// First exponent whose direction lies strictly inside each open quadrant.
fn quadrant_exponents(angle: &Angle, max_exponent: u64) -> Result<Vec<u64>> {
    let mut found: [Option<u64>; 4] = [None; 4];
    for k in 0..=max_exponent {
        let u = angle.times(k).unit();
        if u.re == 0.0 || u.im == 0.0 {
            continue;
        }
        let q = match (u.re > 0.0, u.im > 0.0) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        };
        if found[q].is_none() {
            found[q] = Some(k);
            if found.iter().all(Option::is_some) {
                return Ok(found.iter().map(|k| k.unwrap()).collect());
            }
        }
    }
    Err(Error::SearchExhausted(max_exponent))
}

/// Numerical range of the rank-one operator `f ↦ ⟨f, K_b⟩ψ` (constant `φ ≡ b`).
pub fn rank_one_region(psi: &EntireSymbol, b: Complex64) -> Result<PredictedRegion> {
    if psi.is_zero() {
        return Err(Error::InvalidInput("psi must be nonzero".into()));
    }
    let g = psi.evaluate(b)?;
    let psi_norm = psi.norm()?;
    let kb_norm = (0.5 * b.norm_sqr()).exp();
    let full = psi_norm * kb_norm;
    let minor2 = (full * full - g.norm_sqr()).max(0.0);
    let origin = Complex64::new(0.0, 0.0);
    let detail = format!("psi(b) = {g}, |psi| = {psi_norm}, |K_b| = {kb_norm}");
    let kind = if minor2 <= RANK_ONE_PARALLEL_TOL * full * full {
        RegionKind::Segment { from: origin, to: g }
    } else if g.norm() <= ZERO_WEIGHT_TOL * full.max(1.0) {
        RegionKind::Disk {
            center: origin,
            radius: full / 2.0,
            open: false,
        }
    } else {
        let minor = minor2.sqrt();
        RegionKind::Ellipse {
            f1: origin,
            f2: g,
            major: (g.norm_sqr() + minor2).sqrt(),
            minor,
        }
    };
    Ok(PredictedRegion::new(kind, Some(ClaimId::RankOne), detail))
}

/// Exact `W(C_{ψ,φ})` for `|a| = 1`, where boundedness forces
/// `ψ = ψ(0)·K_{−āb}`.
pub fn unimodular_region(psi: &EntireSymbol, phi: &AffineMap) -> Result<PredictedRegion> {
    let a = phi.a();
    let class = classify_unit_a(a)?;
    let psi0 = unimodular_weight(psi, phi).ok_or_else(|| {
        Error::Unbounded(format!(
            "psi is not psi(0)*K_c with c = -conj(a)*b = {}",
            -(a.value().conj() * phi.b())
        ))
    })?;
    let b = phi.b();
    let origin = Complex64::new(0.0, 0.0);
    match class {
        UnitRootClass::One => {
            let phase = psi0 * (0.5 * b.norm_sqr()).exp();
            Ok(PredictedRegion::new(
                RegionKind::Disk {
                    center: origin,
                    radius: phase.norm(),
                    open: true,
                },
                Some(ClaimId::UnimodularTranslation),
                format!("a = 1, psi(0) = {psi0}"),
            )
            .with_scale(phase))
        }
        UnitRootClass::RootOfUnity { order } => {
            let s = unimodular_scale(psi0, a.value(), b);
            let kind = if order == 2 {
                RegionKind::Segment { from: s, to: s * a.pow(1) }
            } else {
                RegionKind::PolygonHull {
                    vertices: (0..order).map(|k| s * a.pow(k)).collect(),
                }
            };
            Ok(PredictedRegion::new(
                kind,
                Some(ClaimId::UnimodularRootOfUnity),
                format!("a primitive root of unity of order {order}, s = {s}"),
            )
            .with_scale(s))
        }
        UnitRootClass::NotRootOfUnity { provable } => {
            let s = unimodular_scale(psi0, a.value(), b);
            let note = if provable {
                "a is not a root of unity"
            } else {
                "a given in floating point, treated as not a root of unity (unprovable)"
            };
            Ok(PredictedRegion::new(
                RegionKind::DiskPlusOrbit {
                    scale: s,
                    orbit_generator: *a,
                },
                Some(ClaimId::UnimodularIrrational),
                format!("{note}, s = {s}"),
            )
            .with_scale(s))
        }
    }
}

/// `ψ(0)·e^{a|b|²/(a−1)}`.
fn unimodular_scale(psi0: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    psi0 * (a * b.norm_sqr() / (a - 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::conjugate_to_q;
    use std::f64::consts::{E, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classify_examples() {
        let i = PolarRationalAngle::exact(1.0, 1, 2).unwrap();
        assert_eq!(classify_unit_a(&i).unwrap(), UnitRootClass::RootOfUnity { order: 4 });
        let minus = PolarRationalAngle::exact(1.0, 1, 1).unwrap();
        assert_eq!(classify_unit_a(&minus).unwrap(), UnitRootClass::RootOfUnity { order: 2 });
        let irr = PolarRationalAngle::from_radians(1.0, 3f64.sqrt()).unwrap();
        assert_eq!(
            classify_unit_a(&irr).unwrap(),
            UnitRootClass::NotRootOfUnity { provable: false }
        );
        let one = PolarRationalAngle::exact(1.0, 0, 1).unwrap();
        assert_eq!(classify_unit_a(&one).unwrap(), UnitRootClass::One);
        assert!(classify_unit_a(&PolarRationalAngle::real(0.5).unwrap()).is_err());
    }

    #[test]
    fn exact_order_is_primitive() {
        for den in 1..=64u64 {
            for num in -(den as i64) + 1..=den as i64 {
                let (num, den) = match Angle::exact(num, den).unwrap() {
                    Angle::Exact { num, den } => (num, den),
                    _ => unreachable!(),
                };
                let n = exact_order(num, den);
                // a^j = 1 iff j·num/den is an even integer
                let is_one = |j: u64| (j as i128 * num as i128).rem_euclid(2 * den as i128) == 0;
                assert!(is_one(n));
                assert!((1..n).all(|j| !is_one(j)));
            }
        }
    }

    fn example_25a() -> ConjugationData {
        let psi = EntireSymbol::kernel(c(1.0, 0.0));
        let phi = AffineMap::new(PolarRationalAngle::real(0.5).unwrap(), c(0.5, 0.0)).unwrap();
        conjugate_to_q(&psi, &phi, 8).unwrap()
    }

    #[test]
    fn literal_and_corrected_ellipses() {
        let data = example_25a();
        let half = PolarRationalAngle::real(0.5).unwrap();
        let lit = fixed_point_ellipse(&data, &half, 1, 1, EllipseMode::PaperLiteral).unwrap();
        match lit.kind {
            RegionKind::Ellipse { f1, f2, major, .. } => {
                assert!((f1 - c(0.5, 0.0)).norm() < 1e-15);
                assert!((f2 - c(0.25, 0.0)).norm() < 1e-15);
                assert!((major - (1.0 / 16.0 + E * E / 8.0).sqrt()).abs() < 1e-14);
            }
            _ => panic!("expected ellipse"),
        }
        let cor = fixed_point_ellipse(&data, &half, 1, 1, EllipseMode::CorrectedCompression).unwrap();
        match cor.kind {
            RegionKind::Ellipse { f1, f2, major, minor } => {
                assert!((f1 - c(E / 2.0, 0.0)).norm() < 1e-14);
                assert!((f2 - c(E / 4.0, 0.0)).norm() < 1e-14);
                assert!((minor - E * 2f64.sqrt() / 4.0).abs() < 1e-14);
                assert!((major - E * 3f64.sqrt() / 4.0).abs() < 1e-14);
            }
            _ => panic!("expected ellipse"),
        }
        assert!(!cor.contains(c(0.0, 0.0)));
        assert!(nilpotent_disk(&data, &half, 0, 1).is_err());
    }

    #[test]
    fn identity_weight_gives_segment() {
        let data = ConjugationData::from_qhat(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let a = PolarRationalAngle::real(0.5).unwrap();
        let r = fixed_point_ellipse(&data, &a, 1, 2, EllipseMode::CorrectedCompression).unwrap();
        assert_eq!(r.kind, RegionKind::Segment { from: c(0.5, 0.0), to: c(0.125, 0.0) });
    }

    #[test]
    fn nilpotent_disk_radii() {
        let psi = EntireSymbol::kernel(c(1.0, 0.0)).add(&EntireSymbol::constant(c(-(-1f64).exp(), 0.0)));
        let phi = AffineMap::new(PolarRationalAngle::real(0.5).unwrap(), c(-0.5, 0.0)).unwrap();
        let data = conjugate_to_q(&psi, &phi, 4).unwrap();
        let r = nilpotent_disk(&data, phi.a(), 0, 1).unwrap();
        match r.kind {
            RegionKind::Disk { radius, open, .. } => {
                assert!((radius - 1.0 / (2.0 * E)).abs() < 1e-14);
                assert!(!open);
            }
            _ => panic!("expected disk"),
        }
        let data = ConjugationData::from_qhat(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)]);
        let r = nilpotent_disk(&data, &PolarRationalAngle::real(0.5).unwrap(), 1, 2).unwrap();
        match r.kind {
            RegionKind::Disk { radius, .. } => assert!((radius - 0.3 * 0.5 * 3f64.sqrt() / 2.0).abs() < 1e-15),
            _ => panic!("expected disk"),
        }
    }

    #[test]
    fn witnesses() {
        let one = c(1.0, 0.0);
        let seg = zero_witness(one, &PolarRationalAngle::real(-0.5).unwrap(), 100).unwrap();
        assert_eq!(seg.case, WitnessCase::RealSegment);
        assert!(seg.contains_zero);

        let tri = zero_witness(one, &PolarRationalAngle::exact(0.5, 2, 3).unwrap(), 100).unwrap();
        assert_eq!(tri.case, WitnessCase::RootOfUnityPolygon);
        assert_eq!(tri.vertices.len(), 3);
        assert!((tri.vertices[2] - Complex64::from_polar(0.25, 4.0 * PI / 3.0)).norm() < 1e-15);

        let quad = zero_witness(one, &PolarRationalAngle::from_radians(0.9, 1.0).unwrap(), 10_000).unwrap();
        assert_eq!(quad.case, WitnessCase::QuadrantPoints);
        assert_eq!(quad.vertices.len(), 4);
        let cert = quad.certificate.unwrap();
        let rebuilt: Complex64 = cert.iter().map(|&(i, t)| quad.vertices[i] * t).sum();
        assert!(rebuilt.norm() < 1e-15);

        assert!(matches!(
            zero_witness(one, &PolarRationalAngle::real(0.5).unwrap(), 100),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn exhausted_search_is_reported() {
        let a = PolarRationalAngle::from_radians(0.9, 0.01).unwrap();
        assert_eq!(zero_witness(c(1.0, 0.0), &a, 10), Err(Error::SearchExhausted(10)));
    }

    #[test]
    fn rank_one_cases() {
        let seg = rank_one_region(&EntireSymbol::one(), c(0.0, 0.0)).unwrap();
        assert_eq!(seg.kind, RegionKind::Segment { from: c(0.0, 0.0), to: c(1.0, 0.0) });
        let disk = rank_one_region(&EntireSymbol::monomial(1), c(0.0, 0.0)).unwrap();
        match disk.kind {
            RegionKind::Disk { radius, .. } => assert!((radius - 0.5).abs() < 1e-14),
            _ => panic!("expected disk"),
        }
        let kern = rank_one_region(&EntireSymbol::kernel(c(1.0, 0.0)), c(1.0, 0.0)).unwrap();
        match kern.kind {
            RegionKind::Segment { to, .. } => assert!((to - c(E, 0.0)).norm() < 1e-13),
            _ => panic!("expected segment"),
        }
        let ell = rank_one_region(&EntireSymbol::kernel(c(0.5, 0.0)), c(1.0, 0.0)).unwrap();
        match ell.kind {
            RegionKind::Ellipse { f1, f2, major, minor } => {
                assert!(((major * major - minor * minor) - (f1 - f2).norm_sqr()).abs() < 1e-12);
            }
            _ => panic!("expected ellipse"),
        }
    }

    #[test]
    fn unimodular_examples() {
        let i = PolarRationalAngle::exact(1.0, 1, 2).unwrap();
        let phi = AffineMap::new(i, c(3.0, 0.0)).unwrap();
        let r = unimodular_region(&EntireSymbol::kernel(c(0.0, 3.0)), &phi).unwrap();
        let s = Complex64::from_polar(4.5f64.exp(), -4.5);
        assert!((r.provenance.scale.unwrap() - s).norm() < 1e-12 * s.norm());
        match r.kind {
            RegionKind::PolygonHull { vertices } => assert_eq!(vertices.len(), 4),
            _ => panic!("expected polygon"),
        }

        let translate = AffineMap::new(PolarRationalAngle::exact(1.0, 0, 1).unwrap(), c(2.0, 0.0)).unwrap();
        let r = unimodular_region(&EntireSymbol::kernel(c(-2.0, 0.0)), &translate).unwrap();
        assert_eq!(
            r.kind,
            RegionKind::Disk { center: c(0.0, 0.0), radius: 2f64.exp(), open: true }
        );

        let bad = unimodular_region(&EntireSymbol::kernel(c(2.0, 0.0)), &translate);
        assert!(matches!(bad, Err(Error::Unbounded(_))));
    }
}
