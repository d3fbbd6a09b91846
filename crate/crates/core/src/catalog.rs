//! The five worked examples, with the sign corrections their printed forms
//! need to match the stated fixed points.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{AffineMap, EntireSymbol, PolarRationalAngle};
use crate::regions::ClaimId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExampleId {
    #[serde(rename = "2.5a")]
    ExponentialWeight,
    #[serde(rename = "2.5b")]
    VanishingWeight,
    #[serde(rename = "3.2a")]
    QuarterTurn,
    #[serde(rename = "3.2b")]
    IrrationalTurn,
    #[serde(rename = "3.2c")]
    Translation,
}

impl ExampleId {
    pub const ALL: [ExampleId; 5] = [
        ExampleId::ExponentialWeight,
        ExampleId::VanishingWeight,
        ExampleId::QuarterTurn,
        ExampleId::IrrationalTurn,
        ExampleId::Translation,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            ExampleId::ExponentialWeight => "2.5a",
            ExampleId::VanishingWeight => "2.5b",
            ExampleId::QuarterTurn => "3.2a",
            ExampleId::IrrationalTurn => "3.2b",
            ExampleId::Translation => "3.2c",
        }
    }

    pub fn claim(&self) -> ClaimId {
        match self {
            ExampleId::ExponentialWeight => ClaimId::ExampleExponentialWeight,
            ExampleId::VanishingWeight => ClaimId::ExampleVanishingWeight,
            ExampleId::QuarterTurn => ClaimId::ExampleQuarterTurn,
            ExampleId::IrrationalTurn => ClaimId::ExampleIrrationalTurn,
            ExampleId::Translation => ClaimId::ExampleTranslation,
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.code() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown example `{s}`; expected one of 2.5a, 2.5b, 3.2a, 3.2b, 3.2c")))
    }
}

#[derive(Debug, Clone)]
pub struct Example {
    pub id: ExampleId,
    pub title: &'static str,
    pub psi: EntireSymbol,
    pub phi: AffineMap,
    /// Corrections applied to the printed inputs.
    pub notes: Vec<String>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn example(id: ExampleId) -> Example {
    match id {
        ExampleId::ExponentialWeight => Example {
            id,
            title: "psi = e^z, phi = z/2 + 1/2: ellipse from the compression to span(e_1, e_2)",
            psi: EntireSymbol::kernel(c(1.0, 0.0)),
            phi: AffineMap::new(PolarRationalAngle::real(0.5).unwrap(), c(0.5, 0.0)).unwrap(),
            notes: vec![
                "phi printed as z/2 - 1/2; the stated fixed point 1 and q = e*K_(1/2) force phi = z/2 + 1/2".into(),
                "printed foci 1/2, 1/4 assume psi(p) = 1; here psi(p) = e, so the compression has foci e/2, e/4".into(),
            ],
        },
        ExampleId::VanishingWeight => Example {
            id,
            title: "psi = K_1 - 1/e, phi = z/2 - 1/2: nilpotent compression and disk of radius 1/(2e)",
            psi: EntireSymbol::kernel(c(1.0, 0.0)).add(&EntireSymbol::constant(c(-1.0 / E, 0.0))),
            phi: AffineMap::new(PolarRationalAngle::real(0.5).unwrap(), c(-0.5, 0.0)).unwrap(),
            notes: vec!["phi printed as z/2 + 1/2; psi(-1) = 0 and the printed q force p = -1, i.e. phi = z/2 - 1/2".into()],
        },
        ExampleId::QuarterTurn => Example {
            id,
            title: "psi = K_(3i), phi = iz + 3: W is exp(9i/(i-1)) times the square hull{1, i, -1, -i}",
            psi: EntireSymbol::kernel(c(0.0, 3.0)),
            phi: AffineMap::new(PolarRationalAngle::exact(1.0, 1, 2).unwrap(), c(3.0, 0.0)).unwrap(),
            notes: Vec::new(),
        },
        ExampleId::IrrationalTurn => {
            let a = PolarRationalAngle::from_radians(1.0, 3f64.sqrt()).unwrap();
            let b = c(2.0, 0.0);
            Example {
                id,
                title: "psi = K_(-2exp(-sqrt(3)i)), phi = exp(sqrt(3)i)z + 2: scaled disk plus orbit",
                psi: EntireSymbol::kernel(-(a.value().conj() * b)),
                phi: AffineMap::new(a, b).unwrap(),
                notes: vec!["a = exp(sqrt(3)i) is entered in floating point; not being a root of unity is taken as given".into()],
            }
        }
        ExampleId::Translation => Example {
            id,
            title: "psi = K_(-2), phi = z + 2: W is the open disk of radius e^2",
            psi: EntireSymbol::kernel(c(-2.0, 0.0)),
            phi: AffineMap::new(PolarRationalAngle::exact(1.0, 0, 1).unwrap(), c(2.0, 0.0)).unwrap(),
            notes: Vec::new(),
        },
    }
}

/// Closed-form values printed alongside each example, for cross-checks.
pub fn printed_scale(id: ExampleId) -> Option<Complex64> {
    match id {
        ExampleId::QuarterTurn => {
            let i = c(0.0, 1.0);
            Some((9.0 * i / (i - 1.0)).exp())
        }
        ExampleId::IrrationalTurn => {
            let a = Complex64::from_polar(1.0, 3f64.sqrt());
            Some((4.0 * a / (a - 1.0)).exp())
        }
        ExampleId::Translation => Some(c(E * E, 0.0)),
        _ => None,
    }
}
