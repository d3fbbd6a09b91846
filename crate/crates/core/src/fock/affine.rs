use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::angle::PolarRationalAngle;
use super::symbol::EntireSymbol;
use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;
const CONJUGATION_CHECK_TOL: f64 = 1e-12;
const STRUCTURAL_TOL: f64 = 1e-10;

/// What to do when `|a| > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeCheck {
    Enforce,
    Warn,
}

/// `φ(z) = az + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    a: PolarRationalAngle,
    b: Complex64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

impl AffineMap {
    pub fn new(a: PolarRationalAngle, b: Complex64) -> Result<Self> {
        Self::with_range_check(a, b, RangeCheck::Enforce)
    }

    pub fn with_range_check(a: PolarRationalAngle, b: Complex64, check: RangeCheck) -> Result<Self> {
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::InvalidInput("b must be finite".into()));
        }
        let mut warnings = Vec::new();
        if a.modulus() > 1.0 + UNIT_TOL {
            let msg = format!("|a| = {} exceeds 1; C_(psi,phi) is unbounded", a.modulus());
            match check {
                RangeCheck::Enforce => return Err(Error::Hypothesis(msg)),
                RangeCheck::Warn => warnings.push(msg),
            }
        }
        Ok(Self { a, b, warnings })
    }

    pub fn a(&self) -> &PolarRationalAngle {
        &self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a.value() * z + self.b
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero()
    }
}

/// `p = b/(1 − a)`.
pub fn fixed_point(phi: &AffineMap) -> Result<Complex64> {
    if phi.a.is_one() {
        return Err(Error::NoFixedPoint);
    }
    Ok(phi.b / (Complex64::new(1.0, 0.0) - phi.a.value()))
}

/// Data of the unitary conjugation of `C_{ψ,φ}` to `C_{q,az}` about the fixed
/// point `p` of `φ`: `q(z) = e^{p̄(a−1)z}·ψ(z+p)` and its basis coefficients
/// `q̂_j = √(j!)·t_j(q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugationData {
    pub p: Complex64,
    pub q: EntireSymbol,
    pub qhat: Vec<Complex64>,
}

impl ConjugationData {
    /// Builds the data directly from basis coefficients of `q`, with `p = 0`.
    /// Useful for compressions of a `q`-form operator given by its series.
    pub fn from_qhat(qhat: Vec<Complex64>) -> Self {
        Self {
            p: Complex64::new(0.0, 0.0),
            q: EntireSymbol::zero(),
            qhat,
        }
    }

    /// `ψ(p) = q(0) = q̂_0`.
    pub fn weight_at_fixed_point(&self) -> Complex64 {
        self.qhat.first().copied().unwrap_or_default()
    }
}

pub fn conjugate_to_q(psi: &EntireSymbol, phi: &AffineMap, count: usize) -> Result<ConjugationData> {
    let a = phi.a();
    if a.is_zero() || a.modulus() >= 1.0 {
        return Err(Error::Hypothesis(format!(
            "conjugation needs 0 < |a| < 1, got |a| = {}",
            a.modulus()
        )));
    }
    if count == 0 {
        return Err(Error::InvalidInput("coefficient count must be positive".into()));
    }
    let p = fixed_point(phi)?;
    let w = p * (a.value().conj() - 1.0);
    let q = psi.shift(p).mul_kernel(w);
    let qhat = q.basis_coefficients(count);

    let psi_p = psi.evaluate(p)?;
    let q0 = q.evaluate(Complex64::new(0.0, 0.0))?;
    if (q0 - psi_p).norm() > CONJUGATION_CHECK_TOL * psi_p.norm().max(1.0) {
        return Err(Error::Postcondition(format!("q(0) = {q0} differs from psi(p) = {psi_p}")));
    }
    Ok(ConjugationData { p, q, qhat })
}

/// For `|a| = 1, a ≠ 1` a bounded `C_{ψ,φ}` forces `ψ = ψ(0)·K_{−āb}`; for
/// `a = 1`, `ψ = ψ(0)·K_{−b}` (the same formula). Returns `ψ(0)` when `ψ`
/// has that form term by term.
pub fn unimodular_weight(psi: &EntireSymbol, phi: &AffineMap) -> Option<Complex64> {
    let expected_c = -(phi.a().value().conj() * phi.b());
    match psi.terms() {
        [t] if t.k == 0 && (t.c - expected_c).norm() <= STRUCTURAL_TOL * expected_c.norm().max(1.0) => {
            Some(t.alpha)
        }
        _ => None,
    }
}
