//! Build → sweep → predict → verify pipeline and its deterministic report.

use std::f64::consts::E;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, ExampleId};
use crate::error::{Error, Result};
use crate::fock::{conjugate_to_q, AffineMap, EntireSymbol};
use crate::numrange::{self, FieldOfValues, MembershipStatus, MembershipVerdict};
use crate::operator::build_truncation;
use crate::regions::{
    self, ClaimId, EllipseMode, PredictedRegion, RegionKind, RegionRole, ZeroWitness, DEFAULT_MAX_EXPONENT,
};
use crate::spec::SymbolSpec;

/// Tolerance of the `h_N ≤ h_{N'}` check along the convergence curve.
const MONOTONE_TOL: f64 = 1e-10;
const ZERO_WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSelection {
    Literal,
    Corrected,
    Both,
}

impl ModeSelection {
    fn modes(&self) -> Vec<EllipseMode> {
        match self {
            ModeSelection::Literal => vec![EllipseMode::PaperLiteral],
            ModeSelection::Corrected => vec![EllipseMode::CorrectedCompression],
            ModeSelection::Both => vec![EllipseMode::CorrectedCompression, EllipseMode::PaperLiteral],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    pub dim: usize,
    pub angles: usize,
    /// Boundary-ambiguous band for point membership.
    pub tol: f64,
    /// Allowed shortfall when a region should lie inside `W(T_N)`.
    pub inner_tol: f64,
    /// Allowed overshoot when `W(T_N)` should lie inside a region.
    pub outer_tol: f64,
    pub mode: ModeSelection,
    pub n: Option<usize>,
    pub m: Option<usize>,
    /// Smaller truncation sizes swept for the convergence curve.
    pub curve_dims: Vec<usize>,
    pub max_exponent: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            dim: 64,
            angles: 360,
            tol: numrange::DEFAULT_TOL,
            inner_tol: 1e-6,
            outer_tol: 1e-8,
            mode: ModeSelection::Both,
            n: None,
            m: None,
            curve_dims: Vec::new(),
            max_exponent: DEFAULT_MAX_EXPONENT,
        }
    }
}

impl RunOptions {
    /// Settings for reproducing the worked examples.
    pub fn examples() -> Self {
        Self {
            angles: 720,
            curve_dims: vec![16, 32, 48],
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    Verified,
    #[serde(rename = "Refuted-at-truncation")]
    RefutedAtTruncation,
    Ambiguous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The region should lie inside `W(T_N)`.
    RegionInTruncation,
    /// `W(T_N)` should lie inside the closed region.
    TruncationInRegion,
    /// A point should lie inside `W(T_N)`.
    PointInTruncation,
    /// A closed-form value should match its printed form.
    PrintedValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: ClaimId,
    pub statement: String,
    pub direction: Direction,
    pub status: VerdictStatus,
    /// Positive when the claim holds with room to spare.
    pub margin: f64,
    pub tolerance: f64,
    /// False for claims reported only for comparison (the literal ellipse).
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    pub symbol: SymbolSpec,
    pub dim: usize,
    pub angles: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub dim: usize,
    pub angles: usize,
    pub hull_vertices: Vec<Complex64>,
    pub area: f64,
    pub max_support: f64,
    pub support_residual: f64,
    pub convex_position: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub dim: usize,
    pub max_support: f64,
    pub area: f64,
    /// `h` did not decrease at any angle since the previous point.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    /// Every expected claim verified.
    pub contained: bool,
    pub worst_margin: Option<f64>,
    pub discrepancies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub inputs: Inputs,
    pub regions: Vec<PredictedRegion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ZeroWitness>,
    pub sweep: SweepSummary,
    pub zero_membership: MembershipVerdict,
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub convergence: Vec<ConvergencePoint>,
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
    pub boundary: Vec<Complex64>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn field_of_values(&self) -> FieldOfValues {
        FieldOfValues {
            angles: self.angles.clone(),
            support: self.support.clone(),
            boundary: self.boundary.clone(),
        }
    }

    /// Some expected claim was refuted at this truncation.
    pub fn has_failure(&self) -> bool {
        self.verdicts
            .iter()
            .any(|v| v.expected && v.status == VerdictStatus::RefutedAtTruncation)
    }

    /// Appends a verdict and recomputes the summary.
    pub fn push_verdict(&mut self, verdict: Verdict) {
        self.verdicts.push(verdict);
        refresh_summary(self);
    }

    pub fn verdict(&self, claim: ClaimId) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }
}

/// Regions the closed-form results attach to `(ψ, φ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub regions: Vec<PredictedRegion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ZeroWitness>,
    pub notes: Vec<String>,
}

pub fn predict(psi: &EntireSymbol, phi: &AffineMap, opts: &RunOptions) -> Result<Prediction> {
    let a = phi.a();
    let mut out = Prediction {
        regions: Vec::new(),
        witness: None,
        notes: Vec::new(),
    };
    if a.is_zero() {
        out.regions.push(regions::rank_one_region(psi, phi.b())?);
        return Ok(out);
    }
    if a.is_unimodular() {
        out.regions.push(regions::unimodular_region(psi, phi)?);
        return Ok(out);
    }
    if a.modulus() > 1.0 {
        out.notes.push(format!("|a| = {} > 1: no closed-form region applies", a.modulus()));
        return Ok(out);
    }

    let m = opts.m.unwrap_or(1);
    let n_default = |zero: bool| if zero { 0 } else { 1 };
    let count = (opts.n.unwrap_or(1) + m + 1).max(2);
    let data = conjugate_to_q(psi, phi, count)?;
    let q0 = data.weight_at_fixed_point();
    if q0.norm() <= ZERO_WEIGHT_TOL {
        let n = opts.n.unwrap_or(n_default(true));
        out.regions.push(regions::nilpotent_disk(&data, a, n, m)?);
        out.notes.push(format!("psi(p) = 0 at p = {}: nilpotent compression", data.p));
        return Ok(out);
    }
    let n = opts.n.unwrap_or(n_default(false));
    for mode in opts.mode.modes() {
        let region = regions::fixed_point_ellipse(&data, a, n, m, mode)?;
        out.notes.push(focal_note(&region));
        out.regions.push(region);
    }
    if a.is_positive_real() {
        out.notes.push("a is a positive real number: no zero witness".into());
    } else {
        match regions::zero_witness(q0, a, opts.max_exponent) {
            Ok(w) => out.witness = Some(w),
            Err(Error::SearchExhausted(k)) => out
                .notes
                .push(format!("quadrant search exhausted after {k} exponents; no zero witness")),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn focal_note(region: &PredictedRegion) -> String {
    let claim = region.claim().map_or("region".to_string(), |c| c.to_string());
    match region.kind {
        RegionKind::Ellipse { f1, f2, major, .. } => {
            let sum = f1.norm() + f2.norm();
            let side = if sum <= major { "inside" } else { "outside" };
            format!("0 is {side} the {claim} ellipse: focal sum {sum} vs major axis {major}")
        }
        _ => format!("0 is {} the {claim} region", if region.contains(Complex64::new(0.0, 0.0)) { "inside" } else { "outside" }),
    }
}

/// `min_j (h_j − h_R(θ_j))`: non-negative when the region's support never
/// exceeds the truncation's at the sampled angles.
fn inner_margin(fov: &FieldOfValues, region: &PredictedRegion) -> f64 {
    fov.angles
        .iter()
        .zip(&fov.support)
        .map(|(&t, &h)| h - region.support(t))
        .fold(f64::INFINITY, f64::min)
}

/// Negative of the worst overshoot of `W(T_N)` beyond the closed region,
/// from both the boundary points and the sampled support values.
fn outer_margin(fov: &FieldOfValues, region: &PredictedRegion) -> f64 {
    let by_points = -regions::hull_excess(&fov.boundary, region);
    let by_support = fov
        .angles
        .iter()
        .zip(&fov.support)
        .map(|(&t, &h)| region.support(t) - h)
        .fold(f64::INFINITY, f64::min);
    by_points.min(by_support)
}

fn describe(region: &PredictedRegion) -> String {
    match &region.kind {
        RegionKind::Ellipse { f1, f2, major, minor } => {
            format!("ellipse with foci {f1}, {f2}, major axis {major}, minor axis {minor}")
        }
        RegionKind::Disk { center, radius, open } => {
            format!("{} disk center {center} radius {radius}", if *open { "open" } else { "closed" })
        }
        RegionKind::PolygonHull { vertices } => format!("convex hull of {} points", vertices.len()),
        RegionKind::DiskPlusOrbit { scale, .. } => format!("disk of radius {} plus orbit", scale.norm()),
        RegionKind::Segment { from, to } => format!("segment [{from}, {to}]"),
    }
}

/// Checks one region against a sweep in the direction its role allows.
pub fn check_region(fov: &FieldOfValues, region: &PredictedRegion, opts: &RunOptions) -> Verdict {
    let claim = region.claim().unwrap_or(ClaimId::FixedPointEllipseCorrected);
    let (direction, margin, tolerance, statement) = match claim.role() {
        RegionRole::Inner => (
            Direction::RegionInTruncation,
            inner_margin(fov, region),
            opts.inner_tol,
            format!("{} lies in W(T_N)", describe(region)),
        ),
        RegionRole::Exact => (
            Direction::TruncationInRegion,
            outer_margin(fov, region),
            opts.outer_tol,
            format!("W(T_N) lies in the closure of the {}", describe(region)),
        ),
    };
    Verdict {
        claim,
        statement,
        direction,
        status: status_for(margin, tolerance),
        margin,
        tolerance,
        expected: claim != ClaimId::FixedPointEllipseLiteral,
    }
}

fn status_for(margin: f64, tolerance: f64) -> VerdictStatus {
    if margin >= -tolerance {
        VerdictStatus::Verified
    } else {
        VerdictStatus::RefutedAtTruncation
    }
}

fn summarize(fov: &FieldOfValues, dim: usize) -> SweepSummary {
    let hull = fov.hull();
    SweepSummary {
        dim,
        angles: fov.angles.len(),
        area: crate::geometry::polygon_area(&hull),
        hull_vertices: hull,
        max_support: fov.max_support(),
        support_residual: fov.support_residual(),
        convex_position: fov.is_convex_position(1e-12),
    }
}

fn convergence(
    psi: &EntireSymbol,
    phi: &AffineMap,
    opts: &RunOptions,
    last: &FieldOfValues,
) -> Result<Vec<ConvergencePoint>> {
    let mut dims: Vec<usize> = opts.curve_dims.iter().copied().filter(|&d| d > 0 && d < opts.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    let mut points = Vec::new();
    let mut previous: Option<Vec<f64>> = None;
    let mut push = |dim: usize, fov: &FieldOfValues, previous: &mut Option<Vec<f64>>| {
        let monotone = previous
            .as_ref()
            .is_none_or(|p| p.iter().zip(&fov.support).all(|(a, b)| *a <= b + MONOTONE_TOL));
        points.push(ConvergencePoint {
            dim,
            max_support: fov.max_support(),
            area: fov.area(),
            monotone,
        });
        *previous = Some(fov.support.clone());
    };
    let any = !dims.is_empty();
    for d in dims {
        let fov = numrange::sweep(&build_truncation(psi, phi, d)?.matrix, opts.angles)?;
        push(d, &fov, &mut previous);
    }
    if any {
        push(opts.dim, last, &mut previous);
    }
    Ok(points)
}

/// Full pipeline for one `(ψ, φ)`.
pub fn verify(psi: &EntireSymbol, phi: &AffineMap, opts: &RunOptions) -> Result<RunReport> {
    let op = build_truncation(psi, phi, opts.dim)?;
    let fov = numrange::sweep(&op.matrix, opts.angles)?;
    let prediction = predict(psi, phi, opts)?;

    let mut verdicts: Vec<Verdict> = prediction.regions.iter().map(|r| check_region(&fov, r, opts)).collect();
    let zero = Complex64::new(0.0, 0.0);
    let zero_membership = numrange::membership(&fov, zero, opts.tol);
    if let Some(w) = &prediction.witness {
        let status = match zero_membership.status {
            MembershipStatus::Inside => VerdictStatus::Verified,
            MembershipStatus::BoundaryAmbiguous => VerdictStatus::Ambiguous,
            MembershipStatus::Outside => VerdictStatus::RefutedAtTruncation,
        };
        let margin = match zero_membership.status {
            MembershipStatus::Outside => -zero_membership.margin,
            _ => zero_membership.margin,
        };
        verdicts.push(Verdict {
            claim: ClaimId::ZeroWitness,
            statement: format!("0 lies in W(T_N); eigenvalue witness {:?} with exponents {:?}", w.case, w.exponents),
            direction: Direction::PointInTruncation,
            status,
            margin,
            tolerance: opts.tol,
            expected: true,
        });
    }

    let mut warnings: Vec<String> = phi.warnings().to_vec();
    warnings.extend(op.warnings.iter().cloned());
    let convergence = convergence(psi, phi, opts, &fov)?;
    let mut report = RunReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs: Inputs {
            example: None,
            symbol: SymbolSpec::from_parts(psi, phi),
            dim: opts.dim,
            angles: opts.angles,
            tol: opts.tol,
        },
        regions: prediction.regions,
        witness: prediction.witness,
        sweep: summarize(&fov, opts.dim),
        zero_membership,
        verdicts,
        summary: Summary {
            contained: true,
            worst_margin: None,
            discrepancies: Vec::new(),
        },
        notes: prediction.notes,
        warnings,
        convergence,
        angles: fov.angles,
        support: fov.support,
        boundary: fov.boundary,
    };
    if report.convergence.iter().any(|p| !p.monotone) {
        report.notes.push("support values decreased between truncation sizes".into());
    }
    refresh_summary(&mut report);
    Ok(report)
}

fn refresh_summary(report: &mut RunReport) {
    let expected: Vec<&Verdict> = report.verdicts.iter().filter(|v| v.expected).collect();
    report.summary = Summary {
        contained: expected.iter().all(|v| v.status == VerdictStatus::Verified),
        worst_margin: expected.iter().map(|v| v.margin).reduce(f64::min),
        discrepancies: report
            .verdicts
            .iter()
            .filter(|v| v.status != VerdictStatus::Verified)
            .map(|v| format!("{} {:?}: {} (margin {:e})", v.claim, v.status, v.statement, v.margin))
            .collect(),
    };
}

/// Reproduces one worked example with its registered inputs.
pub fn run_example(id: ExampleId, opts: &RunOptions) -> Result<RunReport> {
    let ex = catalog::example(id);
    let mut report = verify(&ex.psi, &ex.phi, opts)?;
    report.inputs.example = Some(id.code().to_string());
    report.notes.splice(0..0, ex.notes.iter().cloned());
    if let Some(v) = example_verdict(id, &report, &ex)? {
        report.verdicts.push(v);
    }
    refresh_summary(&mut report);
    Ok(report)
}

fn example_verdict(id: ExampleId, report: &RunReport, ex: &catalog::Example) -> Result<Option<Verdict>> {
    let claim = id.claim();
    let base = |c: ClaimId| report.verdict(c).cloned();
    let printed = |value: f64, expected: f64, what: &str| Verdict {
        claim,
        statement: format!("{what}: computed {value}, printed {expected}"),
        direction: Direction::PrintedValue,
        status: status_for(-(value - expected).abs(), 1e-12 * expected.abs().max(1.0)),
        margin: -(value - expected).abs(),
        tolerance: 1e-12 * expected.abs().max(1.0),
        expected: true,
    };
    let restamp = |v: Verdict, prefix: &str| Verdict {
        claim,
        statement: format!("{prefix}: {}", v.statement),
        ..v
    };
    Ok(match id {
        ExampleId::ExponentialWeight => {
            let data = conjugate_to_q(&ex.psi, &ex.phi, 9)?;
            let mut factorial = 1.0f64;
            let mut worst = 0.0f64;
            for (j, q) in data.qhat.iter().enumerate() {
                if j > 0 {
                    factorial *= j as f64;
                }
                let expected = E / (2f64.powi(j as i32) * factorial.sqrt());
                worst = worst.max((q - expected).norm());
            }
            let v = base(ClaimId::FixedPointEllipseCorrected);
            match v {
                Some(v) if worst > 1e-12 => Some(Verdict {
                    status: VerdictStatus::RefutedAtTruncation,
                    ..restamp(v, &format!("q-hat deviates from e/(2^j sqrt(j!)) by {worst:e}"))
                }),
                Some(v) => Some(restamp(v, "corrected compression ellipse")),
                None => None,
            }
        }
        ExampleId::VanishingWeight => {
            let radius = match report.regions.first().map(|r| &r.kind) {
                Some(RegionKind::Disk { radius, .. }) => *radius,
                _ => return Ok(None),
            };
            let check = printed(radius, 1.0 / (2.0 * E), "disk radius vs 1/(2e)");
            match base(ClaimId::NilpotentDisk) {
                Some(v) if check.status == VerdictStatus::Verified => Some(restamp(v, "disk of radius 1/(2e)")),
                _ => Some(check),
            }
        }
        ExampleId::QuarterTurn | ExampleId::IrrationalTurn | ExampleId::Translation => {
            let target = catalog::printed_scale(id).expect("unimodular examples have a printed scale");
            let Some(region) = report.regions.first() else { return Ok(None) };
            let scale = region.provenance.scale.unwrap_or_default();
            let (value, expected) = match id {
                ExampleId::Translation => (scale.norm(), target.norm()),
                _ => ((scale - target).norm() + target.norm(), target.norm()),
            };
            let check = printed(value, expected, "scale factor");
            let source = match id {
                ExampleId::QuarterTurn => ClaimId::UnimodularRootOfUnity,
                ExampleId::IrrationalTurn => ClaimId::UnimodularIrrational,
                _ => ClaimId::UnimodularTranslation,
            };
            match base(source) {
                Some(v) if check.status == VerdictStatus::Verified => Some(restamp(v, "printed region")),
                _ => Some(check),
            }
        }
    })
}
