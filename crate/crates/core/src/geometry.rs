//! Planar convex geometry on complex points.

use num_complex::Complex64;

pub fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain).
/// Collinear and duplicate points are dropped; a degenerate hull comes back
/// as one or two points.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let scale = pts.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1e-300);
    let eps = 1e-14 * scale * scale;

    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() == 1 && pts.len() > 1 {
        // all points coincide up to eps: keep the extreme pair
        return vec![pts[0], pts[pts.len() - 1]];
    }
    hull
}

pub fn polygon_area(poly: &[Complex64]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a.re * b.im - a.im * b.re;
    }
    0.5 * s.abs()
}

pub fn distance_to_segment(w: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = (((w - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (w - (a + d * t)).norm()
}

/// Signed distance from `w` to a convex polygon given counter-clockwise:
/// negative inside, positive outside. Degenerate polygons (point, segment)
/// have empty interior, so the result is never negative for them.
pub fn signed_distance_to_convex(poly: &[Complex64], w: Complex64) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => (w - poly[0]).norm(),
        2 => distance_to_segment(w, poly[0], poly[1]),
        n => {
            let mut inside = true;
            let mut boundary = f64::INFINITY;
            for i in 0..n {
                let a = poly[i];
                let b = poly[(i + 1) % n];
                if cross(a, b, w) < 0.0 {
                    inside = false;
                }
                boundary = boundary.min(distance_to_segment(w, a, b));
            }
            if inside {
                -boundary
            } else {
                boundary
            }
        }
    }
}

/// Writes `w` as a convex combination of polygon vertices by locating it in
/// the fan triangulation from vertex 0. Returns `(vertex index, weight)`
/// pairs, or `None` when `w` is not in the closed polygon.
pub fn convex_combination(poly: &[Complex64], w: Complex64) -> Option<Vec<(usize, f64)>> {
    let scale = poly.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(w.norm()).max(1e-300);
    let eps = 1e-13 * scale * scale;
    match poly.len() {
        0 => None,
        1 => ((w - poly[0]).norm() <= 1e-13 * scale).then(|| vec![(0, 1.0)]),
        2 => {
            let d = poly[1] - poly[0];
            let len2 = d.norm_sqr();
            if len2 == 0.0 {
                return ((w - poly[0]).norm() <= 1e-13 * scale).then(|| vec![(0, 1.0)]);
            }
            let t = ((w - poly[0]) * d.conj()).re / len2;
            let off = cross(poly[0], poly[1], w).abs() / len2.sqrt();
            (off <= 1e-13 * scale && (-1e-13..=1.0 + 1e-13).contains(&t))
                .then(|| vec![(0, 1.0 - t.clamp(0.0, 1.0)), (1, t.clamp(0.0, 1.0))])
        }
        n => {
            for i in 1..n - 1 {
                let (a, b, c) = (poly[0], poly[i], poly[i + 1]);
                let area = cross(a, b, c);
                if area <= 0.0 {
                    continue;
                }
                let wa = cross(b, c, w);
                let wb = cross(c, a, w);
                let wc = cross(a, b, w);
                if wa >= -eps && wb >= -eps && wc >= -eps {
                    let (wa, wb, wc) = (wa.max(0.0), wb.max(0.0), wc.max(0.0));
                    let total = wa + wb + wc;
                    return Some(vec![(0, wa / total), (i, wb / total), (i + 1, wc / total)]);
                }
            }
            None
        }
    }
}

/// `max_v Re(e^{−iθ}·v)`.
pub fn support_of_points(points: &[Complex64], theta: f64) -> f64 {
    let u = Complex64::from_polar(1.0, -theta);
    points.iter().fold(f64::NEG_INFINITY, |m, &v| m.max((u * v).re))
}

/// Outward normal angles of the edges of a counter-clockwise polygon.
pub fn edge_normal_angles(poly: &[Complex64]) -> Vec<f64> {
    match poly.len() {
        0 | 1 => Vec::new(),
        2 => {
            let d = poly[1] - poly[0];
            let t = d.arg();
            vec![t - std::f64::consts::FRAC_PI_2, t + std::f64::consts::FRAC_PI_2]
        }
        n => (0..n)
            .map(|i| {
                let d = poly[(i + 1) % n] - poly[i];
                d.arg() - std::f64::consts::FRAC_PI_2
            })
            .collect(),
    }
}
