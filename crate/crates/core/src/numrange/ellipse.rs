use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::Compression2x2;
use crate::regions::{PredictedRegion, RegionKind};

/// Elliptical range of `[[α, 0], [γ, β]]`: foci `α`, `β`, minor axis `|γ|`,
/// major axis `√(|α − β|² + |γ|²)`.
pub fn ellipse_2x2(m: &Compression2x2) -> Result<PredictedRegion> {
    if m.top_right != Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput(format!(
            "expected a lower-triangular 2x2 matrix, top-right entry is {}",
            m.top_right
        )));
    }
    let (alpha, gamma, beta) = (m.top_left, m.bottom_left, m.bottom_right);
    let kind = if gamma.norm() == 0.0 {
        RegionKind::Segment { from: alpha, to: beta }
    } else if alpha == beta {
        RegionKind::Disk {
            center: alpha,
            radius: gamma.norm() / 2.0,
            open: false,
        }
    } else {
        RegionKind::Ellipse {
            f1: alpha,
            f2: beta,
            major: ((alpha - beta).norm_sqr() + gamma.norm_sqr()).sqrt(),
            minor: gamma.norm(),
        }
    };
    Ok(PredictedRegion::new(
        kind,
        None,
        format!("elliptical range of [[{alpha}, 0], [{gamma}, {beta}]]"),
    ))
}
