//! Complex double-double helpers.
//!
//! Matrix entries of `C_{ψ,φ}` with `|a| = 1, b ≠ 0` are small sums of huge
//! alternating terms; at `N = 64` the absolute term sum exceeds the result by
//! ~1e17. Accumulating in double-double keeps the rounding error near 1e-14.

use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

pub(crate) type Dd = TwoFloat;
pub(crate) type CDd = Complex<TwoFloat>;

pub(crate) fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

pub(crate) fn cdd(z: Complex64) -> CDd {
    Complex::new(dd(z.re), dd(z.im))
}

pub(crate) fn czero() -> CDd {
    Complex::new(dd(0.0), dd(0.0))
}

pub(crate) fn to_c64(z: CDd) -> Complex64 {
    Complex64::new(f64::from(z.re), f64::from(z.im))
}

pub(crate) fn scale(z: CDd, s: Dd) -> CDd {
    Complex::new(z.re * s, z.im * s)
}

pub(crate) fn sqrt(x: Dd) -> Dd {
    if x == dd(0.0) {
        x
    } else {
        x.sqrt()
    }
}

/// `1/x` with one Newton step; twofloat's own division is only accurate to
/// about one double ulp.
pub(crate) fn recip(x: Dd) -> Dd {
    let r0 = dd(1.0 / x.hi());
    r0 + r0 * (dd(1.0) - x * r0)
}

/// `z⁰, z¹, …, z^{count-1}` by repeated double-double multiplication.
pub(crate) fn powers(z: Complex64, count: usize) -> Vec<CDd> {
    let base = cdd(z);
    let mut out = Vec::with_capacity(count);
    let mut acc = Complex::new(dd(1.0), dd(0.0));
    for _ in 0..count {
        out.push(acc);
        acc *= base;
    }
    out
}

/// Rows `0..rows` of `√C(k, j)` for `j ≤ k`, from Pascal's rule.
pub(crate) fn sqrt_binomial_rows(rows: usize) -> Vec<Vec<Dd>> {
    let mut binom: Vec<Vec<Dd>> = Vec::with_capacity(rows);
    for k in 0..rows {
        let mut row = vec![dd(1.0); k + 1];
        for j in 1..k {
            row[j] = binom[k - 1][j - 1] + binom[k - 1][j];
        }
        binom.push(row);
    }
    binom
        .into_iter()
        .map(|row| row.into_iter().map(sqrt).collect())
        .collect()
}

/// `1/√(i!)` for `i < count`.
pub(crate) fn inv_sqrt_factorials(count: usize) -> Vec<Dd> {
    let mut out = Vec::with_capacity(count);
    let mut acc = dd(1.0);
    for i in 0..count {
        if i > 0 {
            acc *= recip(sqrt(dd(i as f64)));
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rows_are_exact_for_small_k() {
        let rows = sqrt_binomial_rows(8);
        let c = rows[7][3] * rows[7][3];
        assert_eq!(f64::from(c), 35.0);
    }

    #[test]
    fn inverse_root_factorials() {
        let v = inv_sqrt_factorials(5);
        let expected = 1.0 / 24f64.sqrt();
        assert!((f64::from(v[4]) - expected).abs() < 1e-16);
    }

    #[test]
    fn reciprocal_is_double_double_accurate() {
        for x in [3.0, 7.0, 63.0, 1e-5] {
            let s = sqrt(dd(x));
            assert!(f64::from(recip(s) * s - dd(1.0)).abs() < 1e-30);
        }
    }

    #[test]
    fn powers_of_i_cycle() {
        let p = powers(Complex64::new(0.0, 1.0), 5);
        assert_eq!(to_c64(p[2]), Complex64::new(-1.0, 0.0));
        assert_eq!(to_c64(p[4]), Complex64::new(1.0, 0.0));
    }
}
