use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::{self, CDd};
use crate::error::{Error, Result};

/// Kernel parameters closer than this (relative to `max(1, |c|)`) are merged.
const KERNEL_MERGE_TOL: f64 = 1e-15;
/// Relative truncation threshold of the inner-product series.
const SERIES_TAIL_TOL: f64 = 1e-14;
/// Consecutive growing terms after which a series is declared divergent.
const DIVERGENCE_RUN: usize = 50;
const SERIES_MAX_TERMS: usize = 100_000;

/// The entire function `z ↦ alpha · z^k · e^{c̄ z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub alpha: Complex64,
    pub k: u32,
    pub c: Complex64,
}

impl KernelTerm {
    pub fn new(alpha: Complex64, k: u32, c: Complex64) -> Self {
        Self { alpha, k, c }
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.alpha * z.powu(self.k) * (self.c.conj() * z).exp()
    }

    fn same_shape(&self, other: &KernelTerm) -> bool {
        self.k == other.k
            && (self.c - other.c).norm() <= KERNEL_MERGE_TOL * self.c.norm().max(1.0)
    }
}

/// A finite sum of [`KernelTerm`]s. Terms with the same power and kernel
/// parameter are merged on construction; the empty sum is the zero function.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EntireSymbol {
    terms: Vec<KernelTerm>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    approximate: bool,
}

impl EntireSymbol {
    pub fn new(terms: impl IntoIterator<Item = KernelTerm>) -> Self {
        let mut merged: Vec<KernelTerm> = Vec::new();
        for t in terms {
            match merged.iter_mut().find(|m| m.same_shape(&t)) {
                Some(m) => m.alpha += t.alpha,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.alpha != Complex64::new(0.0, 0.0));
        Self {
            terms: merged,
            approximate: false,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(alpha: Complex64) -> Self {
        Self::new([KernelTerm::new(alpha, 0, Complex64::new(0.0, 0.0))])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// The reproducing kernel `K_w(z) = e^{w̄ z}`.
    pub fn kernel(w: Complex64) -> Self {
        Self::new([KernelTerm::new(Complex64::new(1.0, 0.0), 0, w)])
    }

    pub fn monomial(k: u32) -> Self {
        Self::new([KernelTerm::new(Complex64::new(1.0, 0.0), k, Complex64::new(0.0, 0.0))])
    }

    /// Polynomial `Σ coeffs[j]·z^j`.
    pub fn polynomial(coeffs: &[Complex64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, &a)| KernelTerm::new(a, j as u32, Complex64::new(0.0, 0.0))),
        )
    }

    /// Truncated Taylor data `Σ coeffs[j]·z^j` standing in for a general
    /// entire function. The result is flagged approximate.
    pub fn from_taylor_approx(coeffs: &[Complex64]) -> Self {
        let mut s = Self::polynomial(coeffs);
        s.approximate = true;
        s
    }

    pub fn terms(&self) -> &[KernelTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    fn with_terms(&self, terms: impl IntoIterator<Item = KernelTerm>) -> Self {
        let mut s = Self::new(terms);
        s.approximate = self.approximate;
        s
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.with_terms(self.terms.iter().map(|t| KernelTerm { alpha: t.alpha * s, ..*t }))
    }

    pub fn add(&self, other: &EntireSymbol) -> Self {
        let mut s = Self::new(self.terms.iter().chain(other.terms.iter()).copied());
        s.approximate = self.approximate || other.approximate;
        s
    }

    /// Pointwise product; `K_c·K_d = K_{c+d}`.
    pub fn mul(&self, other: &EntireSymbol) -> Self {
        let mut s = Self::new(self.terms.iter().flat_map(|t| {
            other
                .terms
                .iter()
                .map(move |u| KernelTerm::new(t.alpha * u.alpha, t.k + u.k, t.c + u.c))
        }));
        s.approximate = self.approximate || other.approximate;
        s
    }

    /// Multiplication by the kernel `K_w`.
    pub fn mul_kernel(&self, w: Complex64) -> Self {
        self.with_terms(self.terms.iter().map(|t| KernelTerm { c: t.c + w, ..*t }))
    }

    /// `z ↦ f(z + p)`, expanding `(z + p)^k` binomially and pulling out
    /// the kernel factor `e^{c̄p}`.
    pub fn shift(&self, p: Complex64) -> Self {
        self.with_terms(self.terms.iter().flat_map(|t| {
            let lead = t.alpha * (t.c.conj() * p).exp();
            let k = t.k;
            let mut binom = 1.0f64;
            (0..=k).map(move |i| {
                if i > 0 {
                    binom = binom * (k - i + 1) as f64 / i as f64;
                }
                KernelTerm::new(lead * binom * p.powu(k - i), i, t.c)
            })
        }))
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            sum += t.eval(z);
        }
        if sum.re.is_finite() && sum.im.is_finite() {
            Ok(sum)
        } else {
            Err(Error::Overflow)
        }
    }

    /// Taylor coefficients `t_0..t_{count-1}` at the origin.
    pub fn taylor_coefficients(&self, count: usize) -> Vec<Complex64> {
        let inv = dd::inv_sqrt_factorials(count.max(1));
        self.basis_coefficients_dd(count)
            .into_iter()
            .zip(inv)
            .map(|(v, s)| dd::to_c64(dd::scale(v, s)))
            .collect()
    }

    /// Coefficients in the orthonormal basis `e_j = z^j/√(j!)`, i.e.
    /// `√(j!)·t_j`.
    pub fn basis_coefficients(&self, count: usize) -> Vec<Complex64> {
        self.basis_coefficients_dd(count).into_iter().map(dd::to_c64).collect()
    }

    /// Double-double basis coefficients. Each term contributes
    /// `α·√(j!)·c̄^{j−k}/(j−k)!` for `j ≥ k`, generated by the ratio
    /// `c̄·√(j+1)/(j+1−k)`.
    pub(crate) fn basis_coefficients_dd(&self, count: usize) -> Vec<CDd> {
        let mut out = vec![dd::czero(); count];
        for t in &self.terms {
            let k = t.k as usize;
            if k >= count {
                continue;
            }
            let cbar = dd::cdd(t.c.conj());
            let mut sqrt_fact = dd::dd(1.0);
            for i in 1..=k {
                sqrt_fact *= dd::sqrt(dd::dd(i as f64));
            }
            let mut v = dd::scale(dd::cdd(t.alpha), sqrt_fact);
            for (j, slot) in out.iter_mut().enumerate().skip(k) {
                if j > k {
                    let ratio = dd::sqrt(dd::dd(j as f64)) * dd::recip(dd::dd((j - k) as f64));
                    v = dd::scale(v * cbar, ratio);
                }
                *slot += v;
            }
        }
        out
    }

    /// `⟨f, g⟩ = Σ_m f̂_m·conj(ĝ_m)` over basis coefficients, summed until the
    /// geometric tail bound falls below `1e-14` of the absolute partial sum.
    pub fn inner_product(&self, other: &EntireSymbol) -> Result<Complex64> {
        let mut fs = SeriesCursor::new(&self.terms);
        let mut gs = SeriesCursor::new(&other.terms);
        let min_len = fs.max_k.max(gs.max_k) * 2 + 1;

        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0f64;
        let mut prev = 0.0f64;
        let mut growth_run = 0usize;
        for m in 0..SERIES_MAX_TERMS {
            let (fv, fa, fr) = fs.next_value(m);
            let (gv, ga, gr) = gs.next_value(m);
            sum += fv * gv.conj();
            let bound = fa * ga;
            abs_sum += bound;

            if bound > prev && m > 0 {
                growth_run += 1;
                if growth_run >= DIVERGENCE_RUN {
                    return Err(Error::Divergent(growth_run));
                }
            } else {
                growth_run = 0;
            }
            prev = bound;

            if m + 1 >= min_len && fr < 0.5 && gr < 0.5 {
                // tail after m is at most bound·Σ 4^{-i} = bound/3
                let tail = bound / 3.0;
                if tail == 0.0 || tail <= SERIES_TAIL_TOL * abs_sum {
                    if !(sum.re.is_finite() && sum.im.is_finite()) {
                        return Err(Error::Overflow);
                    }
                    return Ok(sum);
                }
            }
        }
        Err(Error::Divergent(growth_run))
    }

    /// `‖f‖` in `F²`.
    pub fn norm(&self) -> Result<f64> {
        Ok(self.inner_product(self)?.re.max(0.0).sqrt())
    }
}

/// Streams basis coefficients term by term for the inner-product series.
struct SeriesCursor<'a> {
    terms: &'a [KernelTerm],
    current: Vec<Complex64>,
    max_k: usize,
}

impl<'a> SeriesCursor<'a> {
    fn new(terms: &'a [KernelTerm]) -> Self {
        let max_k = terms.iter().map(|t| t.k as usize).max().unwrap_or(0);
        Self {
            terms,
            current: vec![Complex64::new(0.0, 0.0); terms.len()],
            max_k,
        }
    }

    /// Value at index `m`, the sum of term magnitudes, and the largest
    /// ratio `|c|·√(m+1)/(m+1−k)` bounding the next step of any term.
    fn next_value(&mut self, m: usize) -> (Complex64, f64, f64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        let mut ratio = 0.0f64;
        for (t, cur) in self.terms.iter().zip(self.current.iter_mut()) {
            let k = t.k as usize;
            if m < k {
                ratio = f64::INFINITY;
                continue;
            }
            if m == k {
                let sqrt_fact: f64 = (1..=k).map(|i| (i as f64).sqrt()).product();
                *cur = t.alpha * sqrt_fact;
            } else {
                *cur = *cur * t.c.conj() * ((m as f64).sqrt() / (m - k) as f64);
            }
            value += *cur;
            mag += cur.norm();
            ratio = ratio.max(t.c.norm() * ((m + 1) as f64).sqrt() / (m + 1 - k) as f64);
        }
        (value, mag, ratio)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_at_origin_is_one() {
        let k0 = EntireSymbol::kernel(c(0.0, 0.0));
        assert_eq!(k0.evaluate(c(3.0, -2.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn shifted_kernel_vanishes_at_minus_one() {
        let psi = EntireSymbol::kernel(c(1.0, 0.0)).add(&EntireSymbol::constant(c(-1.0 / E, 0.0)));
        assert!(psi.evaluate(c(-1.0, 0.0)).unwrap().norm() < 1e-16);
    }

    #[test]
    fn scaled_kernel_evaluates_to_e_squared() {
        let f = EntireSymbol::kernel(c(0.5, 0.0)).scale(c(E, 0.0));
        let v = f.evaluate(c(2.0, 0.0)).unwrap();
        assert!((v - c(E * E, 0.0)).norm() < 1e-14);
        assert!((v.re - 7.389056).abs() < 1e-6);
    }

    #[test]
    fn evaluation_overflow_is_reported() {
        let f = EntireSymbol::kernel(c(1000.0, 0.0));
        assert_eq!(f.evaluate(c(1000.0, 0.0)), Err(Error::Overflow));
    }

    #[test]
    fn taylor_of_half_kernel() {
        let t = EntireSymbol::kernel(c(0.5, 0.0)).taylor_coefficients(3);
        assert_eq!(t, vec![c(1.0, 0.0), c(0.5, 0.0), c(0.125, 0.0)]);
    }

    #[test]
    fn taylor_of_monomial() {
        let t = EntireSymbol::monomial(1).taylor_coefficients(3);
        assert_eq!(t, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn taylor_of_kernel_difference() {
        // e^{-1}(e^{3z/2} - e^{z/2}) has t_j = (3^j - 1)/(e·2^j·j!)
        let q = EntireSymbol::kernel(c(1.5, 0.0))
            .add(&EntireSymbol::kernel(c(0.5, 0.0)).scale(c(-1.0, 0.0)))
            .scale(c(1.0 / E, 0.0));
        let t = q.taylor_coefficients(10);
        let mut fact = 1.0;
        for (j, tj) in t.iter().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            let expected = (3f64.powi(j as i32) - 1.0) / (E * 2f64.powi(j as i32) * fact);
            assert!((tj.re - expected).abs() <= 1e-15 * expected.abs().max(1e-3), "j={j}");
            assert_eq!(tj.im, 0.0);
        }
    }

    #[test]
    fn kernel_norm_squared_is_e() {
        let k1 = EntireSymbol::kernel(c(1.0, 0.0));
        let v = k1.inner_product(&k1).unwrap();
        assert!((v.re - E).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn distinct_monomials_are_orthogonal() {
        let v = EntireSymbol::monomial(1).inner_product(&EntireSymbol::one()).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn reproducing_property_for_z_times_kernel() {
        // <z·e^z, K_2> = 2e²
        let f = EntireSymbol::new([KernelTerm::new(c(1.0, 0.0), 1, c(1.0, 0.0))]);
        let v = f.inner_product(&EntireSymbol::kernel(c(2.0, 0.0))).unwrap();
        assert!((v.re - 2.0 * E * E).abs() < 1e-12 * 2.0 * E * E);
        assert!((v.re - 14.778112).abs() < 1e-6);
    }

    #[test]
    fn wide_kernel_pairing_is_divergent() {
        let k = EntireSymbol::kernel(c(9.0, 0.0));
        assert!(matches!(k.inner_product(&k), Err(Error::Divergent(_))));
    }

    #[test]
    fn merge_combines_identical_shapes() {
        let s = EntireSymbol::new([
            KernelTerm::new(c(1.0, 0.0), 2, c(0.5, 0.5)),
            KernelTerm::new(c(2.0, 0.0), 2, c(0.5, 0.5)),
            KernelTerm::new(c(1.0, 0.0), 1, c(0.5, 0.5)),
        ]);
        assert_eq!(s.terms().len(), 2);
        assert_eq!(s.terms()[0].alpha, c(3.0, 0.0));
        let z = EntireSymbol::one().add(&EntireSymbol::constant(c(-1.0, 0.0)));
        assert!(z.is_zero());
    }

    #[test]
    fn shift_matches_pointwise_evaluation() {
        let f = EntireSymbol::new([
            KernelTerm::new(c(0.3, -1.0), 3, c(0.2, 0.7)),
            KernelTerm::new(c(1.0, 0.0), 0, c(-1.0, 0.0)),
        ]);
        let p = c(0.4, -0.9);
        let g = f.shift(p);
        for z in [c(0.0, 0.0), c(1.0, 1.0), c(-0.7, 0.2)] {
            let lhs = g.evaluate(z).unwrap();
            let rhs = f.evaluate(z + p).unwrap();
            assert!((lhs - rhs).norm() < 1e-13 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn approximate_flag_propagates() {
        let s = EntireSymbol::from_taylor_approx(&[c(1.0, 0.0), c(0.5, 0.0)]);
        assert!(s.is_approximate());
        assert!(s.mul(&EntireSymbol::one()).is_approximate());
        assert!(!EntireSymbol::one().is_approximate());
    }
}
