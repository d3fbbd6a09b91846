//! Truncated matrices of weighted composition operators `C_{ψ,φ} h = ψ·(h∘φ)`
//! on the Fock space `F²` with affine `φ(z) = az + b`, their numerical ranges,
//! and the closed-form regions those numerical ranges are known to contain or
//! equal.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`]: kernel-polynomial symbols, Fock inner products and the
//!   fixed-point conjugation of an affine symbol.
//! * [`operator`]: `N×N` truncations in the orthonormal monomial basis and
//!   the `2×2` compressions used for the ellipse and disk regions.
//! * [`numrange`]: field of values of a finite matrix by a support-function
//!   sweep over a cyclic Jacobi eigensolver.
//! * [`regions`]: predicted regions with exact membership predicates.
//! * [`report`]: the claim registry, the verification pipeline and the
//!   deterministic run reports consumed by the command-line tool.

pub mod catalog;
pub mod error;
pub mod fock;
pub mod geometry;
pub mod matrix;
pub mod numrange;
pub mod operator;
pub mod regions;
pub mod report;
pub mod spec;

mod dd;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use fock::{
    conjugate_to_q, fixed_point, AffineMap, Angle, ConjugationData, EntireSymbol, KernelTerm,
    PolarRationalAngle,
};
pub use matrix::CMatrix;
pub use numrange::{
    ellipse_2x2, hermitian_max_eigenpair, membership, sweep, Certificate, FieldOfValues, MembershipStatus,
    MembershipVerdict,
};
pub use operator::{apply_column_oracle, build_truncation, compression, Compression2x2, TruncatedOperator};
pub use regions::{ClaimId, EllipseMode, PredictedRegion, RegionKind, UnitRootClass, ZeroWitness};
pub use report::{predict, run_example, verify, ModeSelection, RunOptions, RunReport, Verdict, VerdictStatus};
pub use spec::SymbolSpec;

/// Scalar field of every stored quantity.
pub type ComplexScalar = Complex64;
