//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::{E, TAU};
use std::process::ExitCode;
use std::time::Instant;

use fockrange_core::catalog::{example, ExampleId};
use fockrange_core::regions::{
    nilpotent_disk, rank_one_region, region_in_hull_margin, sampled_hausdorff, unimodular_region, zero_witness,
};
use fockrange_core::{
    apply_column_oracle, build_truncation, conjugate_to_q, ellipse_2x2, membership, run_example, sweep, AffineMap,
    ClaimId, Complex64, Compression2x2, EntireSymbol, Error, KernelTerm, MembershipStatus, PolarRationalAngle,
    RegionKind, RunOptions, VerdictStatus,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn vanishing_weight_disk() -> Outcome {
    let start = Instant::now();
    let ex = example(ExampleId::VanishingWeight);
    let data = conjugate_to_q(&ex.psi, &ex.phi, 2).map_err(fail)?;
    let q1_err = (data.qhat[1] - 1.0 / E).norm();
    ensure(q1_err <= 1e-12, format!("q1 off by {q1_err:e}"))?;
    let disk = nilpotent_disk(&data, ex.phi.a(), 0, 1).map_err(fail)?;
    let radius = match disk.kind {
        RegionKind::Disk { radius, .. } => radius,
        ref k => return Err(format!("expected a disk, got {k:?}")),
    };
    ensure((radius - 1.0 / (2.0 * E)).abs() <= 1e-12, format!("radius {radius}"))?;
    let t = build_truncation(&ex.psi, &ex.phi, 48).map_err(fail)?;
    let fov = sweep(&t.matrix, 720).map_err(fail)?;
    let margin = region_in_hull_margin(&disk, &fov.hull());
    let elapsed = start.elapsed().as_secs_f64();
    ensure(margin >= -1e-6, format!("disk margin {margin:e}"))?;
    ensure(elapsed < 10.0, format!("took {elapsed:.2} s"))?;
    Ok(format!("radius {radius:.7}, margin {margin:.3e}, q1 err {q1_err:.1e}, {elapsed:.2} s"))
}

fn exponential_weight_ellipses() -> Outcome {
    let ex = example(ExampleId::ExponentialWeight);
    let data = conjugate_to_q(&ex.psi, &ex.phi, 9).map_err(fail)?;
    let mut factorial = 1.0f64;
    for (j, q) in data.qhat.iter().enumerate() {
        if j > 0 {
            factorial *= j as f64;
        }
        let expected = E / (2f64.powi(j as i32) * factorial.sqrt());
        ensure((q - expected).norm() <= 1e-12, format!("q{j} = {q}, expected {expected}"))?;
    }
    let opts = RunOptions {
        dim: 48,
        angles: 720,
        ..RunOptions::default()
    };
    let report = run_example(ExampleId::ExponentialWeight, &opts).map_err(fail)?;
    let corrected = report
        .regions
        .iter()
        .find(|r| r.claim() == Some(ClaimId::FixedPointEllipseCorrected))
        .ok_or("no corrected ellipse")?;
    match corrected.kind {
        RegionKind::Ellipse { f1, f2, major, minor } => {
            ensure((f1 - E / 2.0).norm() <= 1e-12 && (f2 - E / 4.0).norm() <= 1e-12, format!("foci {f1}, {f2}"))?;
            ensure((minor - E * 2f64.sqrt() / 4.0).abs() <= 1e-12, format!("minor {minor}"))?;
            ensure((major - E * 3f64.sqrt() / 4.0).abs() <= 1e-12, format!("major {major}"))?;
        }
        ref k => return Err(format!("unexpected corrected region {k:?}")),
    }
    let margin = region_in_hull_margin(corrected, &report.sweep.hull_vertices);
    ensure(margin >= -1e-9, format!("corrected ellipse margin {margin:e}"))?;
    ensure(!corrected.contains(c(0.0, 0.0)), "0 inside the corrected ellipse")?;
    ensure(
        report.notes.iter().any(|n| n.starts_with("0 is outside the P2.1-corr ellipse")),
        "report does not flag 0 outside the corrected ellipse",
    )?;

    let literal = report
        .regions
        .iter()
        .find(|r| r.claim() == Some(ClaimId::FixedPointEllipseLiteral))
        .ok_or("no literal ellipse")?;
    match literal.kind {
        RegionKind::Ellipse { f1, f2, major, .. } => {
            ensure((f1 - 0.5).norm() <= 1e-15 && (f2 - 0.25).norm() <= 1e-15, format!("literal foci {f1}, {f2}"))?;
            let expected = (1.0 / 16.0 + E * E / 8.0).sqrt();
            ensure((major - expected).abs() <= 1e-12, format!("literal major {major}"))?;
        }
        ref k => return Err(format!("unexpected literal region {k:?}")),
    }
    let lit = report.verdict(ClaimId::FixedPointEllipseLiteral).ok_or("no literal verdict")?;
    let corr = report.verdict(ClaimId::FixedPointEllipseCorrected).ok_or("no corrected verdict")?;
    ensure(corr.status == VerdictStatus::Verified, format!("corrected verdict {:?}", corr.status))?;
    Ok(format!(
        "corrected margin {margin:.3e}; literal ellipse {:?} (margin {:.3e}); 0 in W(T_48): {:?}",
        lit.status, lit.margin, report.zero_membership.status
    ))
}

fn spectral_norm_2x2(m: &Compression2x2) -> f64 {
    let t = m.to_matrix();
    let g = |i: usize, j: usize| -> Complex64 { (0..2).map(|k| t[(k, i)].conj() * t[(k, j)]).sum() };
    let (p, q, r) = (g(0, 0).re, g(1, 1).re, g(0, 1).norm());
    (0.5 * (p + q) + (0.25 * (p - q) * (p - q) + r * r).sqrt()).sqrt()
}

fn two_by_two_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut entry = || Complex64::from_polar(rng.gen_range(0.0..2.0), rng.gen_range(0.0..TAU));
    let mut worst = 0.0f64;
    for case in 0..200 {
        let m = Compression2x2::lower_triangular(entry(), entry(), entry());
        let region = ellipse_2x2(&m).map_err(fail)?;
        let fov = sweep(&m.to_matrix(), 720).map_err(fail)?;
        let d = sampled_hausdorff(&fov, &region);
        let bound = 1e-8 * (1.0 + spectral_norm_2x2(&m));
        ensure(d <= bound, format!("case {case}: distance {d:e} > {bound:e}"))?;
        worst = worst.max(d / bound);
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 5.0, format!("took {elapsed:.2} s"))?;
    Ok(format!("200 cases, worst distance/bound {worst:.2e}, {elapsed:.2} s"))
}

fn quarter_turn_diagonal() -> Outcome {
    let a = PolarRationalAngle::exact(1.0, 1, 2).map_err(fail)?;
    let phi = AffineMap::new(a, c(0.0, 0.0)).map_err(fail)?;
    let psi = EntireSymbol::one();
    let region = unimodular_region(&psi, &phi).map_err(fail)?;
    let mut worst = 0.0f64;
    for dim in [4, 5, 8, 16] {
        let fov = sweep(&build_truncation(&psi, &phi, dim).map_err(fail)?.matrix, 720).map_err(fail)?;
        let d = sampled_hausdorff(&fov, &region);
        ensure(d <= 1e-9, format!("N = {dim}: distance {d:e}"))?;
        worst = worst.max(d);
    }
    Ok(format!("N in {{4, 5, 8, 16}}, worst Hausdorff {worst:.2e}"))
}

fn monotone(prev: &[f64], next: &[f64], tol: f64) -> Option<usize> {
    prev.iter().zip(next).position(|(a, b)| *a > b + tol)
}

fn quarter_turn_containment() -> Outcome {
    let ex = example(ExampleId::QuarterTurn);
    let expected_scale = c(4.5, -4.5).exp();
    let region = unimodular_region(&ex.psi, &ex.phi).map_err(fail)?;
    let vertices = match &region.kind {
        RegionKind::PolygonHull { vertices } => vertices.clone(),
        k => return Err(format!("unexpected region {k:?}")),
    };
    for (k, v) in vertices.iter().enumerate() {
        let want = expected_scale * c(0.0, 1.0).powu(k as u32);
        ensure((v - want).norm() <= 1e-12 * want.norm(), format!("vertex {k}: {v} vs {want}"))?;
    }
    let mut previous: Option<Vec<f64>> = None;
    let mut excess = f64::NEG_INFINITY;
    for dim in [16, 32, 48, 64] {
        let fov = sweep(&build_truncation(&ex.psi, &ex.phi, dim).map_err(fail)?.matrix, 720).map_err(fail)?;
        if let Some(p) = &previous {
            if let Some(j) = monotone(p, &fov.support, 1e-10) {
                return Err(format!("h decreased at N = {dim}, theta index {j}"));
            }
        }
        if dim == 64 {
            excess = fov.hull().iter().map(|&p| region.signed_distance(p)).fold(f64::NEG_INFINITY, f64::max);
            ensure(excess <= 1e-8, format!("hull exceeds the region by {excess:e}"))?;
        }
        previous = Some(fov.support);
    }
    Ok(format!("max outward distance at N = 64: {excess:.3e}; h monotone over N = 16, 32, 48, 64"))
}

fn translation_bound() -> Outcome {
    let ex = example(ExampleId::Translation);
    let bound = E * E;
    let mut previous: Option<Vec<f64>> = None;
    let mut curve = Vec::new();
    for dim in 1..=64 {
        let fov = sweep(&build_truncation(&ex.psi, &ex.phi, dim).map_err(fail)?.matrix, 360).map_err(fail)?;
        let top = fov.max_support();
        ensure(top <= bound + 1e-8, format!("N = {dim}: max h = {top} exceeds e^2"))?;
        if let Some(p) = &previous {
            if let Some(j) = monotone(p, &fov.support, 1e-10) {
                return Err(format!("h decreased at N = {dim}, theta index {j}"));
            }
        }
        if dim % 16 == 0 {
            curve.push(format!("N={dim}: {top:.6}"));
        }
        previous = Some(fov.support);
    }
    Ok(format!("e^2 = {bound:.6}; max h {}", curve.join(", ")))
}

fn positive_diagonal_excludes_zero() -> Outcome {
    let phi = AffineMap::new(PolarRationalAngle::real(0.5).map_err(fail)?, c(0.0, 0.0)).map_err(fail)?;
    let mut margins = Vec::new();
    for dim in [2, 4, 8, 16, 32] {
        let fov = sweep(&build_truncation(&EntireSymbol::one(), &phi, dim).map_err(fail)?.matrix, 720).map_err(fail)?;
        let verdict = membership(&fov, c(0.0, 0.0), 1e-12);
        ensure(
            verdict.status == MembershipStatus::Outside && verdict.margin > 0.0,
            format!("N = {dim}: {:?} with margin {:e}", verdict.status, verdict.margin),
        )?;
        margins.push(format!("{:.2e}", verdict.margin));
    }
    Ok(format!("Outside for N = 2..32, margins {}", margins.join(", ")))
}

fn zero_witnesses() -> Outcome {
    let one = c(1.0, 0.0);
    let cases = [
        ("a = -1/2", PolarRationalAngle::exact(0.5, 1, 1).map_err(fail)?),
        ("a = e^(2 pi i/3)/2", PolarRationalAngle::exact(0.5, 2, 3).map_err(fail)?),
        ("a = 0.9 e^i", PolarRationalAngle::from_radians(0.9, 1.0).map_err(fail)?),
    ];
    let mut found = Vec::new();
    for (label, a) in cases {
        let w = zero_witness(one, &a, 10_000).map_err(|e| format!("{label}: {e}"))?;
        ensure(w.contains_zero, format!("{label}: no witness"))?;
        let weights = w.certificate.as_ref().ok_or(format!("{label}: no certificate"))?;
        let rebuilt: Complex64 = weights.iter().map(|&(i, t)| w.vertices[i] * t).sum();
        let total: f64 = weights.iter().map(|&(_, t)| t).sum();
        ensure(
            rebuilt.norm() <= 1e-12 && (total - 1.0).abs() <= 1e-12 && weights.iter().all(|&(_, t)| t >= 0.0),
            format!("{label}: certificate rebuilds {rebuilt} with total {total}"),
        )?;
        found.push(format!("{label}: exponents {:?}", w.exponents));
    }
    match zero_witness(one, &PolarRationalAngle::real(0.5).map_err(fail)?, 10_000) {
        Err(Error::Hypothesis(_)) => {}
        other => return Err(format!("a = 1/2 gave {other:?}")),
    }
    Ok(format!("{}; a = 1/2 rejected", found.join("; ")))
}

fn rank_one() -> Outcome {
    let phi = AffineMap::new(PolarRationalAngle::real(0.0).map_err(fail)?, c(0.0, 0.0)).map_err(fail)?;
    let mut out = Vec::new();
    for (label, psi, expect) in [
        ("psi = z", EntireSymbol::monomial(1), "disk"),
        ("psi = 1", EntireSymbol::one(), "segment"),
    ] {
        let region = rank_one_region(&psi, c(0.0, 0.0)).map_err(fail)?;
        match (&region.kind, expect) {
            (RegionKind::Disk { center, radius, .. }, "disk") => {
                ensure(center.norm() <= 1e-15 && (radius - 0.5).abs() <= 1e-12, format!("{label}: disk {radius}"))?
            }
            (RegionKind::Segment { from, to }, "segment") => ensure(
                from.norm() <= 1e-15 && (to - 1.0).norm() <= 1e-12,
                format!("{label}: segment [{from}, {to}]"),
            )?,
            (k, _) => return Err(format!("{label}: unexpected {k:?}")),
        }
        let fov = sweep(&build_truncation(&psi, &phi, 16).map_err(fail)?.matrix, 720).map_err(fail)?;
        let d = sampled_hausdorff(&fov, &region);
        ensure(d <= 1e-6, format!("{label}: distance {d:e}"))?;
        out.push(format!("{label}: {} at distance {d:.2e}", region.kind_name()));
    }
    Ok(out.join("; "))
}

fn column_oracle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let mut z = |r: f64| Complex64::from_polar(rng.gen_range(0.0..r), rng.gen_range(0.0..TAU));
        let terms: Vec<KernelTerm> = (0..3).map(|_| KernelTerm::new(z(2.0), 0, z(1.5))).collect();
        let mut psi = EntireSymbol::new(terms);
        psi = psi.add(&EntireSymbol::monomial(2).scale(z(1.0)));
        let a = PolarRationalAngle::cartesian(z(1.0)).map_err(fail)?;
        let phi = AffineMap::new(a, z(1.5)).map_err(fail)?;
        let dim = rng.gen_range(1..=16);
        let n = rng.gen_range(0..dim);
        let t = build_truncation(&psi, &phi, dim).map_err(fail)?;
        let column = apply_column_oracle(&psi, &phi, n, dim).map_err(fail)?;
        for (k, want) in column.iter().enumerate() {
            let d = (t.matrix[(k, n)] - want).norm();
            ensure(d <= 1e-12, format!("case {case}: entry ({k}, {n}) off by {d:e}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("100 cases, worst entry difference {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("vanishing-weight disk inside W(T_48)", vanishing_weight_disk),
        ("exponential-weight ellipses, both modes", exponential_weight_ellipses),
        ("2x2 elliptical range vs sweep", two_by_two_oracle),
        ("b = 0 quarter turn gives the square", quarter_turn_diagonal),
        ("quarter-turn truncations inside the scaled square", quarter_turn_containment),
        ("translation bound e^2 and monotone h_N", translation_bound),
        ("0 outside W(T_N) for psi = 1, phi = z/2", positive_diagonal_excludes_zero),
        ("zero witnesses", zero_witnesses),
        ("rank-one regions", rank_one),
        ("column oracle suite", column_oracle_suite),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
