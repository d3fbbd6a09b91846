//! Minimal SVG rendering of a sweep and predicted regions.

use std::fmt::Write;

use fockrange_core::{Complex64, Error, FieldOfValues, PredictedRegion, RegionKind, RunReport};

const SIZE: f64 = 600.0;
const PAD: f64 = 30.0;
const STROKES: [(&str, &str); 4] = [("#c0392b", "6 3"), ("#2471a3", "2 3"), ("#1e8449", "8 3 2 3"), ("#7d3c98", "4 4")];

struct Frame {
    min: Complex64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Complex64]) -> Self {
        let (mut lo, mut hi) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12);
        let center = (lo + hi) * 0.5;
        let half = Complex64::new(span / 2.0, span / 2.0);
        Frame {
            min: center - half,
            scale: (SIZE - 2.0 * PAD) / span,
        }
    }

    /// SVG coordinates, with the imaginary axis pointing up.
    fn map(&self, z: Complex64) -> (f64, f64) {
        (PAD + (z.re - self.min.re) * self.scale, SIZE - PAD - (z.im - self.min.im) * self.scale)
    }

    fn path(&self, points: &[Complex64], close: bool) -> String {
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if i == 0 { "M" } else { "L" });
        }
        if close {
            d.push('Z');
        }
        d
    }
}

fn region_points(region: &PredictedRegion) -> (Vec<Complex64>, bool) {
    match region.kind {
        RegionKind::Segment { .. } => (region.outline(2), false),
        _ => (region.outline(256), true),
    }
}

/// Hull of the sweep, each region with its own stroke, and the origin.
pub fn render(fov: &FieldOfValues, regions: &[PredictedRegion]) -> anyhow::Result<String> {
    if fov.boundary.is_empty() {
        anyhow::bail!(Error::InvalidInput("report has an empty sweep".into()));
    }
    let hull = fov.hull();
    let outlines: Vec<(Vec<Complex64>, bool)> = regions.iter().map(region_points).collect();
    let mut all = hull.clone();
    outlines.iter().for_each(|(o, _)| all.extend(o));
    let frame = Frame::fit(&all);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#)?;
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        s,
        r##"<path class="hull" d="{}" fill="#d6eaf8" fill-opacity="0.6" stroke="black" stroke-width="1.5"/>"##,
        frame.path(&hull, true)
    )?;
    for (i, ((points, close), region)) in outlines.iter().zip(regions).enumerate() {
        let (color, dash) = STROKES[i % STROKES.len()];
        let label = region.claim().map_or("region".to_string(), |c| c.to_string());
        writeln!(
            s,
            r#"<path class="region" data-claim="{label}" data-kind="{}" d="{}" fill="none" stroke="{color}" stroke-dasharray="{dash}" stroke-width="1.5"/>"#,
            region.kind_name(),
            frame.path(points, *close)
        )?;
    }
    let (ox, oy) = frame.map(Complex64::new(0.0, 0.0));
    writeln!(
        s,
        r#"<g class="origin" stroke="black"><line x1="{:.3}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="{:.3}" x2="{ox:.3}" y2="{:.3}"/></g>"#,
        ox - 5.0,
        ox + 5.0,
        oy - 5.0,
        oy + 5.0
    )?;
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_report(report: &RunReport) -> anyhow::Result<String> {
    render(&report.field_of_values(), &report.regions)
}
