//! Field of values of a finite complex matrix.
//!
//! The support function `h(θ) = λ_max((e^{−iθ}T + e^{iθ}T†)/2)` is sampled
//! at `K` uniform angles; the quadratic form at each top eigenvector is a
//! boundary point of `W(T)`. The hull of those points is an inner
//! approximation and the half-planes `Re(e^{−iθ}w) ≤ h(θ)` an outer one.

mod ellipse;
mod fov;
mod jacobi;

pub use ellipse::ellipse_2x2;
pub use fov::{membership, sweep, Certificate, FieldOfValues, MembershipStatus, MembershipVerdict, DEFAULT_TOL};
pub use jacobi::{
    hermitian_max_eigenpair, jacobi_eigen, jacobi_eigen_from, max_eigenpair_with_basis, HermitianEigen, MAX_SWEEPS,
    OFF_DIAGONAL_TOL,
};
