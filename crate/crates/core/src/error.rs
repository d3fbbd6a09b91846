use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value overflowed the floating-point range")]
    Overflow,

    #[error("series diverges: terms grew for {0} consecutive indices")]
    Divergent(usize),

    #[error("affine map has no fixed point (a = 1)")]
    NoFixedPoint,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("unbounded operator: {0}")]
    Unbounded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NonHermitian(f64),

    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("eigenpair residual {residual:e} exceeds bound {bound:e}")]
    Residual { residual: f64, bound: f64 },

    #[error("orbit search exhausted after {0} exponents without a point in every open quadrant")]
    SearchExhausted(u64),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
