use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Argument of a complex number, either an exact rational multiple of `π` or
/// a floating-point angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Angle {
    /// `(num/den)·π`, reduced, with `num/den ∈ (−1, 1]`.
    Exact { num: i64, den: u64 },
    Inexact { radians: f64 },
}

impl Angle {
    pub fn exact(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("angle denominator must be positive".into()));
        }
        let period = 2 * den as i128;
        // representative in (−den, den]
        let mut r = (num as i128).rem_euclid(period);
        if r > den as i128 {
            r -= period;
        }
        let g = gcd(r.unsigned_abs(), den as u128).max(1);
        Ok(Angle::Exact {
            num: (r / g as i128) as i64,
            den: (den as u128 / g) as u64,
        })
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::Exact { num, den } => PI * num as f64 / den as f64,
            Angle::Inexact { radians } => radians,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact { .. })
    }

    /// `k` times this angle, reduced.
    pub fn times(&self, k: u64) -> Angle {
        match *self {
            Angle::Exact { num, den } => {
                let period = 2 * den as i128;
                let r = (num as i128).rem_euclid(period) * (k as i128 % period);
                Angle::exact((r % period) as i64, den).expect("denominator is positive")
            }
            Angle::Inexact { radians } => Angle::Inexact {
                radians: radians * k as f64,
            },
        }
    }

    /// `e^{iθ}`, exact on the coordinate axes.
    pub fn unit(&self) -> Complex64 {
        match *self {
            Angle::Exact { num, den } => match (num, den) {
                (0, _) => Complex64::new(1.0, 0.0),
                (1, 1) => Complex64::new(-1.0, 0.0),
                (1, 2) => Complex64::new(0.0, 1.0),
                (-1, 2) => Complex64::new(0.0, -1.0),
                _ => Complex64::from_polar(1.0, self.radians()),
            },
            Angle::Inexact { radians } => Complex64::from_polar(1.0, radians),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Exact { num, den } => write!(f, "{num}π/{den}"),
            Angle::Inexact { radians } => write!(f, "{radians} rad"),
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a as u128, b as u128) as u64
}

/// The coefficient `a` of `φ(z) = az + b`, kept in polar form so that
/// "is a root of unity" can be decided exactly when the angle is exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarRationalAngle {
    modulus: f64,
    angle: Angle,
    value: Complex64,
}

impl PolarRationalAngle {
    /// `r·e^{iπ·num/den}`.
    pub fn exact(modulus: f64, num: i64, den: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let angle = Angle::exact(num, den)?;
        Ok(Self::from_parts(modulus, angle))
    }

    pub fn from_radians(modulus: f64, radians: f64) -> Result<Self> {
        check_modulus(modulus)?;
        if !radians.is_finite() {
            return Err(Error::InvalidInput("angle must be finite".into()));
        }
        Ok(Self::from_parts(modulus, Angle::Inexact { radians }))
    }

    /// Cartesian input. Points on the coordinate axes get exact angles; the
    /// stored value is the input itself.
    pub fn cartesian(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("coefficient must be finite".into()));
        }
        let angle = if z.im == 0.0 {
            if z.re < 0.0 {
                Angle::exact(1, 1)?
            } else {
                Angle::exact(0, 1)?
            }
        } else if z.re == 0.0 {
            Angle::exact(if z.im > 0.0 { 1 } else { -1 }, 2)?
        } else {
            Angle::Inexact { radians: z.arg() }
        };
        Ok(Self {
            modulus: z.norm(),
            angle,
            value: z,
        })
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::cartesian(Complex64::new(x, 0.0))
    }

    fn from_parts(modulus: f64, angle: Angle) -> Self {
        Self {
            modulus,
            angle,
            value: angle.unit() * modulus,
        }
    }

    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// `a^k`. Exact angles are reduced before the trigonometric evaluation.
    pub fn pow(&self, k: u64) -> Complex64 {
        match self.angle {
            Angle::Exact { .. } => {
                let r = if k == 0 { 1.0 } else { self.modulus.powf(k as f64) };
                self.angle.times(k).unit() * r
            }
            Angle::Inexact { .. } => {
                if k <= i32::MAX as u64 {
                    self.value.powi(k as i32)
                } else {
                    Complex64::from_polar(self.modulus.powf(k as f64), self.angle.radians() * k as f64)
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.modulus == 0.0
    }

    pub fn is_one(&self) -> bool {
        self.value == Complex64::new(1.0, 0.0)
    }

    pub fn is_unimodular(&self) -> bool {
        (self.modulus - 1.0).abs() <= 1e-12
    }

    pub fn is_positive_real(&self) -> bool {
        self.modulus > 0.0
            && match self.angle {
                Angle::Exact { num, .. } => num == 0,
                Angle::Inexact { radians } => radians.rem_euclid(2.0 * PI) == 0.0,
            }
    }

    pub fn is_negative_real(&self) -> bool {
        self.modulus > 0.0
            && match self.angle {
                Angle::Exact { num, den } => num == 1 && den == 1,
                Angle::Inexact { .. } => self.value.im == 0.0 && self.value.re < 0.0,
            }
    }
}

fn check_modulus(modulus: f64) -> Result<()> {
    if !(modulus.is_finite() && modulus >= 0.0) {
        return Err(Error::InvalidInput(format!("modulus must be finite and non-negative, got {modulus}")));
    }
    Ok(())
}
