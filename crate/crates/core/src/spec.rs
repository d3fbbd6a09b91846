//! JSON input format for a pair `(ψ, φ)`.
//!
//! ```json
//! {
//!   "psi": [{"alpha": [1, 0], "k": 0, "c": [1, 0]}],
//!   "phi": {"a": {"polar": {"r": 0.5, "pi_num": 0, "pi_den": 1}}, "b": [0.5, 0]}
//! }
//! ```
//!
//! `a` may also be `{"cart": [re, im]}` or `{"radians": {"r": .., "theta": ..}}`.
//! Setting `"warn_only": true` on `phi` downgrades `|a| > 1` to a warning.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{AffineMap, Angle, EntireSymbol, KernelTerm, PolarRationalAngle, RangeCheck};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub alpha: [f64; 2],
    pub k: u32,
    pub c: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarSpec {
    pub r: f64,
    pub pi_num: i64,
    pub pi_den: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiansSpec {
    pub r: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientSpec {
    Polar(PolarSpec),
    Cart([f64; 2]),
    Radians(RadiansSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSpec {
    pub a: CoefficientSpec,
    pub b: [f64; 2],
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub warn_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    pub psi: Vec<TermSpec>,
    pub phi: PhiSpec,
}

fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl SymbolSpec {
    /// Parses JSON text; errors carry the line, column and offending field.
    pub fn parse(text: &str) -> Result<Self> {
        let spec: SymbolSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let finite = |v: &[f64; 2]| v.iter().all(|x| x.is_finite());
        for (i, t) in self.psi.iter().enumerate() {
            if !finite(&t.alpha) {
                return Err(Error::Parse(format!("psi[{i}].alpha is not finite")));
            }
            if !finite(&t.c) {
                return Err(Error::Parse(format!("psi[{i}].c is not finite")));
            }
        }
        if !finite(&self.phi.b) {
            return Err(Error::Parse("phi.b is not finite".into()));
        }
        match &self.phi.a {
            CoefficientSpec::Polar(p) if p.pi_den == 0 => Err(Error::Parse("phi.a.polar.pi_den must be positive".into())),
            CoefficientSpec::Polar(p) if !(p.r.is_finite() && p.r >= 0.0) => {
                Err(Error::Parse("phi.a.polar.r must be finite and non-negative".into()))
            }
            CoefficientSpec::Radians(p) if !(p.r.is_finite() && p.r >= 0.0 && p.theta.is_finite()) => {
                Err(Error::Parse("phi.a.radians needs finite r >= 0 and theta".into()))
            }
            CoefficientSpec::Cart(v) if !finite(v) => Err(Error::Parse("phi.a.cart is not finite".into())),
            _ => Ok(()),
        }
    }

    pub fn symbol(&self) -> EntireSymbol {
        EntireSymbol::new(self.psi.iter().map(|t| KernelTerm::new(cx(t.alpha), t.k, cx(t.c))))
    }

    pub fn coefficient(&self) -> Result<PolarRationalAngle> {
        match &self.phi.a {
            CoefficientSpec::Polar(p) => PolarRationalAngle::exact(p.r, p.pi_num, p.pi_den),
            CoefficientSpec::Cart(v) => PolarRationalAngle::cartesian(cx(*v)),
            CoefficientSpec::Radians(p) => PolarRationalAngle::from_radians(p.r, p.theta),
        }
    }

    /// Builds `φ`; `|a| > 1` is a hypothesis error unless `warn_only` is set.
    pub fn map(&self) -> Result<AffineMap> {
        let check = if self.phi.warn_only {
            RangeCheck::Warn
        } else {
            RangeCheck::Enforce
        };
        AffineMap::with_range_check(self.coefficient()?, cx(self.phi.b), check)
    }

    /// The spec describing an existing pair.
    pub fn from_parts(psi: &EntireSymbol, phi: &AffineMap) -> Self {
        let a = phi.a();
        let coefficient = match a.angle() {
            Angle::Exact { num, den } => CoefficientSpec::Polar(PolarSpec {
                r: a.modulus(),
                pi_num: num,
                pi_den: den,
            }),
            Angle::Inexact { radians } => CoefficientSpec::Radians(RadiansSpec {
                r: a.modulus(),
                theta: radians,
            }),
        };
        SymbolSpec {
            psi: psi
                .terms()
                .iter()
                .map(|t| TermSpec {
                    alpha: pair(t.alpha),
                    k: t.k,
                    c: pair(t.c),
                })
                .collect(),
            phi: PhiSpec {
                a: coefficient,
                b: pair(phi.b()),
                warn_only: !phi.warnings().is_empty(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}
