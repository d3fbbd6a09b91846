//! Kernel-polynomial symbols on the Fock space `F²` and the affine maps
//! acting on them.
//!
//! `F²` has the orthonormal basis `e_m(z) = z^m/√(m!)` and reproducing
//! kernel `K_w(z) = e^{w̄z}` with `‖K_w‖ = e^{|w|²/2}`.

mod affine;
mod angle;
mod symbol;

pub use affine::{conjugate_to_q, fixed_point, unimodular_weight, AffineMap, ConjugationData, RangeCheck};
pub use angle::{Angle, PolarRationalAngle};
pub(crate) use angle::gcd_u64;
pub use symbol::{EntireSymbol, KernelTerm};
