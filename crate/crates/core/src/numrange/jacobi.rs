//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Rotations sweep the strict upper triangle row by row in a fixed order, so
//! results are bit-for-bit reproducible. Each rotation is `U = D·P` where
//! `D = diag(1, e^{−iφ})` makes the pivot `h_pq = |h_pq|e^{iφ}` real and `P`
//! is the classical real Jacobi rotation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Sweeps stop once the off-diagonal Frobenius norm is below this fraction
/// of the full Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 60;
const HERMITIAN_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in the order Jacobi leaves them on the diagonal.
    pub values: Vec<f64>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    pub vectors: CMatrix,
    pub sweeps: usize,
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::InvalidInput(format!("matrix is {}x{}, expected square", h.rows(), h.cols())));
    }
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NonHermitian(dev));
    }
    Ok(())
}

/// Full eigendecomposition by cyclic Jacobi.
pub fn jacobi_eigen(h: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows();
    let mut a = h.as_slice().to_vec();
    for i in 0..n {
        a[i * n + i].im = 0.0;
    }
    let mut vt = CMatrix::identity(n).as_slice().to_vec();
    let sweeps = run(n, &mut a, &mut vt)?;
    Ok(finish(n, &a, &vt, sweeps))
}

/// Jacobi on `B = V†HV` for a unitary `basis = V`, returning eigenvectors of
/// `h` itself. When `V` diagonalizes a nearby matrix, `B` is almost diagonal
/// and few sweeps are needed.
pub fn jacobi_eigen_from(h: &CMatrix, basis: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows();
    if basis.rows() != n || basis.cols() != n {
        return Err(Error::InvalidInput("basis must match the matrix size".into()));
    }
    // rows of vt are the basis vectors
    let mut vt = basis.adjoint().as_slice().iter().map(|z| z.conj()).collect::<Vec<_>>();
    let hv: Vec<Vec<Complex64>> = (0..n).map(|j| h.mul_vec(&vt[j * n..(j + 1) * n])).collect();
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let vi = &vt[i * n..(i + 1) * n];
        for j in i..n {
            let b: Complex64 = vi.iter().zip(&hv[j]).map(|(x, y)| x.conj() * y).sum();
            a[i * n + j] = b;
            a[j * n + i] = b.conj();
        }
        a[i * n + i].im = 0.0;
    }
    let sweeps = run(n, &mut a, &mut vt)?;
    Ok(finish(n, &a, &vt, sweeps))
}

fn finish(n: usize, a: &[Complex64], vt: &[Complex64], sweeps: usize) -> HermitianEigen {
    HermitianEigen {
        values: (0..n).map(|i| a[i * n + i].re).collect(),
        vectors: CMatrix::from_fn(n, n, |i, j| vt[j * n + i]),
        sweeps,
    }
}

fn off_diagonal_norm(n: usize, a: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic sweeps on the row-major Hermitian `a`; rotations are also applied
/// to the rows of `vt` (the eigenvectors, transposed).
fn run(n: usize, a: &mut [Complex64], vt: &mut [Complex64]) -> Result<usize> {
    let target = OFF_DIAGONAL_TOL * a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(n, a);
        if off <= target || off == 0.0 {
            return Ok(sweeps);
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        // entries below target/n cannot keep the off-diagonal norm above
        // target, so they are left alone
        let skip = target / n as f64;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                if a[p * n + q].norm() > skip {
                    rotate(n, a, vt, p, q);
                }
            }
        }
    }
}

fn rotate(n: usize, a: &mut [Complex64], vt: &mut [Complex64], p: usize, q: usize) {
    let g = a[p * n + q];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let unphase = (g / mag).conj();
    // U = [[c, s], [−s·ū, c·ū]] on coordinates (p, q), with ū = unphase
    let uqp = unphase * -s;
    let uqq = unphase * c;

    // A ← U†AU: update column entries from the (contiguous) rows p, q and
    // mirror them, since A stays Hermitian
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[p * n + k].conj();
        let akq = a[q * n + k].conj();
        let np = akp * c + akq * uqp;
        let nq = akp * s + akq * uqq;
        a[k * n + p] = np;
        a[k * n + q] = nq;
        a[p * n + k] = np.conj();
        a[q * n + k] = nq.conj();
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(app - t * mag, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * mag, 0.0);

    // V ← VU, i.e. rows p, q of Vᵀ
    let (head, tail) = vt.split_at_mut(q * n);
    let vp = &mut head[p * n..(p + 1) * n];
    let vq = &mut tail[..n];
    for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = xp * c + xq * uqp;
        *y = xp * s + xq * uqq;
    }
}

/// Rotates `v` so its first largest-modulus entry is real and positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() {
            best = i;
        }
    }
    let lead = v[best];
    if lead.norm() == 0.0 {
        return;
    }
    let rot = lead.conj() / lead.norm();
    for z in v.iter_mut() {
        *z *= rot;
    }
    v[best] = Complex64::new(v[best].norm(), 0.0);
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
}

/// Largest eigenvalue and a unit eigenvector of a Hermitian matrix. Ties go
/// to the lowest diagonal index after convergence; the eigenvector's first
/// largest-modulus entry is real positive.
pub fn hermitian_max_eigenpair(h: &CMatrix) -> Result<(f64, Vec<Complex64>)> {
    max_eigenpair_with_basis(h, None).map(|(l, v, _)| (l, v))
}

/// As [`hermitian_max_eigenpair`], optionally warm-started from the
/// eigenvectors of a nearby matrix. Also returns this matrix's eigenvectors
/// (for `n ≥ 3`) so calls can be chained along a path of matrices.
pub fn max_eigenpair_with_basis(
    h: &CMatrix,
    basis: Option<&CMatrix>,
) -> Result<(f64, Vec<Complex64>, Option<CMatrix>)> {
    check_hermitian(h)?;
    let n = h.rows();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let (lambda, mut v, vectors) = match n {
        1 => (h[(0, 0)].re, vec![Complex64::new(1.0, 0.0)], None),
        2 => {
            let (l, v) = max_eigenpair_2x2(h);
            (l, v, None)
        }
        _ => {
            let eig = match basis {
                Some(b) => jacobi_eigen_from(h, b)?,
                None => jacobi_eigen(h)?,
            };
            let mut best = 0;
            for (i, &x) in eig.values.iter().enumerate() {
                if x > eig.values[best] {
                    best = i;
                }
            }
            (eig.values[best], eig.vectors.column(best), Some(eig.vectors))
        }
    };
    normalize(&mut v);
    fix_phase(&mut v);

    let hv = h.mul_vec(&v);
    let residual = hv
        .iter()
        .zip(&v)
        .map(|(&x, &y)| (x - y * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let bound = RESIDUAL_TOL * h.frobenius_norm().max(f64::MIN_POSITIVE);
    if residual > bound {
        return Err(Error::Residual { residual, bound });
    }
    Ok((lambda, v, vectors))
}

fn max_eigenpair_2x2(h: &CMatrix) -> (f64, Vec<Complex64>) {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let g = h[(0, 1)];
    let half_gap = 0.5 * (a - d);
    let lambda = 0.5 * (a + d) + half_gap.hypot(g.norm());
    if g.norm() == 0.0 {
        let v = if d > a {
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
        } else {
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        };
        return (lambda.max(a).max(d), v);
    }
    // (g, λ − a) and (λ − d, ḡ) both solve (H − λ)v = 0; take the larger
    let v1 = [g, Complex64::new(lambda - a, 0.0)];
    let v2 = [Complex64::new(lambda - d, 0.0), g.conj()];
    let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
    let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
    let v = if n1 >= n2 { v1 } else { v2 };
    (lambda, v.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let mut h = CMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in 0..i {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h
    }

    /// Power iteration on `H + ‖H‖_F·I`, whose dominant eigenvalue is the
    /// shifted maximum eigenvalue of `H`.
    fn power_iteration_oracle(h: &CMatrix) -> f64 {
        let n = h.rows();
        let shift = h.frobenius_norm();
        let mut v: Vec<Complex64> = (0..n).map(|i| c(1.0 + i as f64 * 0.01, 0.3)).collect();
        let mut lambda = 0.0;
        for _ in 0..20_000 {
            let mut w = h.mul_vec(&v);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi += vi * shift;
            }
            let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let rayleigh: Complex64 = w.iter().zip(&v).map(|(a, b)| b.conj() * a).sum();
            lambda = rayleigh.re - shift;
            v = w.into_iter().map(|z| z / norm).collect();
        }
        lambda
    }

    #[test]
    fn diagonal_matrix() {
        let h = CMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let (l, v) = hermitian_max_eigenpair(&h).unwrap();
        assert_eq!(l, 3.0);
        assert_eq!(v, vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn symmetric_involution() {
        let h = CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.5, 0.0)], vec![c(0.5, 0.0), c(0.0, 0.0)]]).unwrap();
        let (l, v) = hermitian_max_eigenpair(&h).unwrap();
        assert!((l - 0.5).abs() < 1e-16);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[0] - c(s, 0.0)).norm() < 1e-15 && (v[1] - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn random_hermitian_matches_power_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let h = random_hermitian(6, &mut rng);
            let (l, v) = hermitian_max_eigenpair(&h).unwrap();
            assert!((l - power_iteration_oracle(&h)).abs() < 1e-9);
            let hv = h.mul_vec(&v);
            let res: f64 = hv.iter().zip(&v).map(|(a, b)| (a - b * l).norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= 1e-10 * h.frobenius_norm());
        }
    }

    #[test]
    fn full_decomposition_reconstructs_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(9, &mut rng);
        let eig = jacobi_eigen(&h).unwrap();
        let vv = &eig.vectors;
        let rebuilt = CMatrix::from_fn(9, 9, |i, j| {
            (0..9).map(|k| vv[(i, k)] * eig.values[k] * vv[(j, k)].conj()).sum()
        });
        let err = rebuilt
            .as_slice()
            .iter()
            .zip(h.as_slice())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        assert!(err < 1e-13, "err {err}");
        assert!(eig.sweeps <= MAX_SWEEPS);
    }

    #[test]
    fn ties_resolve_to_lowest_index() {
        let h = CMatrix::diagonal(&[c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let (_, v) = hermitian_max_eigenpair(&h).unwrap();
        assert_eq!(v[0], c(1.0, 0.0));
        let z = CMatrix::zeros(3, 3);
        let (l, v) = hermitian_max_eigenpair(&z).unwrap();
        assert_eq!(l, 0.0);
        assert_eq!(v[0], c(1.0, 0.0));
    }

    #[test]
    fn phase_convention() {
        let h = CMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 2.0)], vec![c(0.0, -2.0), c(1.0, 0.0)]]).unwrap();
        let (_, v) = hermitian_max_eigenpair(&h).unwrap();
        let lead = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
        assert_eq!(lead.im, 0.0);
        assert!(lead.re > 0.0);
    }

    #[test]
    fn rejects_non_hermitian() {
        let t = CMatrix::from_rows(vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!(matches!(hermitian_max_eigenpair(&t), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn warm_start_agrees_with_cold_start() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let t = CMatrix::from_fn(10, 10, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let h0 = t.rotated_hermitian_part(0.0);
        let h1 = t.rotated_hermitian_part(0.01);
        let basis = jacobi_eigen(&h0).unwrap().vectors;
        let warm = jacobi_eigen_from(&h1, &basis).unwrap();
        let cold = jacobi_eigen(&h1).unwrap();
        assert!(warm.sweeps < cold.sweeps);
        let mut a = warm.values.clone();
        let mut b = cold.values.clone();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-13));
        let (lw, vw, _) = max_eigenpair_with_basis(&h1, Some(&basis)).unwrap();
        let (lc, vc) = hermitian_max_eigenpair(&h1).unwrap();
        assert!((lw - lc).abs() < 1e-13);
        assert!(vw.iter().zip(&vc).all(|(x, y)| (x - y).norm() < 1e-10));
    }

    #[test]
    fn deterministic_across_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(12, &mut rng);
        let first = hermitian_max_eigenpair(&h).unwrap();
        for _ in 0..3 {
            let again = hermitian_max_eigenpair(&h).unwrap();
            assert_eq!(first.0.to_bits(), again.0.to_bits());
            assert_eq!(first.1, again.1);
        }
    }
}
