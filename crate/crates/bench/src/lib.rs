//! Fixtures shared by the benchmarks.

use fockrange_core::catalog::{example, ExampleId};
use fockrange_core::{build_truncation, CMatrix, Complex64};

/// Truncation of a worked example.
pub fn example_matrix(id: ExampleId, dim: usize) -> CMatrix {
    let ex = example(id);
    build_truncation(&ex.psi, &ex.phi, dim).expect("example builds").matrix
}

/// Dense Hermitian test matrix with a spread spectrum.
pub fn hermitian(dim: usize) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| {
        let (x, y) = (i as f64, j as f64);
        if i == j {
            Complex64::new(x.sin() * dim as f64, 0.0)
        } else {
            let s = if i < j { 1.0 } else { -1.0 };
            Complex64::new((x * y).cos() / (1.0 + (x - y).abs()), s * (x + y).sin() / (1.0 + (x - y).abs()))
        }
    })
}
