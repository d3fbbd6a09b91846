//! Truncations of `C_{ψ,φ}` in the basis `e_0..e_{N−1}` and `2×2`
//! compressions of the conjugated operator `C_{q,az}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::{self, CDd};
use crate::error::{Error, Result};
use crate::fock::{unimodular_weight, AffineMap, ConjugationData, EntireSymbol, PolarRationalAngle};
use crate::matrix::CMatrix;

/// Unit roundoff assumed for double-double accumulation.
const DD_EPS: f64 = 1e-31;
/// Rounding bounds above this fraction of the largest entry raise a warning.
const ROUNDING_WARN: f64 = 1e-10;

/// `N×N` matrix with `M[k][n] = ⟨C_{ψ,φ} e_n, e_k⟩`.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    pub dim: usize,
    pub matrix: CMatrix,
    pub psi: EntireSymbol,
    pub phi: AffineMap,
    pub warnings: Vec<String>,
    /// A priori bound on the absolute rounding error of any entry.
    pub rounding_bound: f64,
}

/// `M[k][n] = Σ_{j ≤ min(n,k)} √C(k,j)·√C(n,j)·a^j·b^{n−j}/√((n−j)!)·ψ̂_{k−j}`,
/// which is `√(k!/n!)·[z^k](ψ(z)(az+b)^n)` rewritten so that no factorial
/// is ever formed. Sums are accumulated in double-double.
pub fn build_truncation(psi: &EntireSymbol, phi: &AffineMap, dim: usize) -> Result<TruncatedOperator> {
    if dim == 0 {
        return Err(Error::InvalidInput("truncation dimension must be positive".into()));
    }
    if psi.is_zero() {
        return Err(Error::InvalidInput("weight symbol is identically zero".into()));
    }

    let mut warnings: Vec<String> = phi.warnings().to_vec();
    if psi.is_approximate() {
        warnings.push("weight is a truncated Taylor series; entries are approximate".into());
    }
    if phi.a().is_unimodular() && unimodular_weight(psi, phi).is_none() {
        warnings.push(
            "|a| = 1 but the weight is not psi(0)*K_(-conj(a)b); the operator is unbounded and only its truncation is meaningful"
                .into(),
        );
    }

    let psi_hat = psi.basis_coefficients_dd(dim);
    let sqrt_binom = dd::sqrt_binomial_rows(dim);
    let inv_sqrt_fact = dd::inv_sqrt_factorials(dim);
    let a_pow = dd::powers(phi.a().value(), dim);
    let b_pow = dd::powers(phi.b(), dim);
    let linear = phi.b() == Complex64::new(0.0, 0.0);

    let columns: Vec<(Vec<Complex64>, f64)> = (0..dim)
        .into_par_iter()
        .map(|n| {
            // coefficients of (az+b)^n/√(n!) in the basis, times 1/√C(n,j)
            let poly: Vec<CDd> = (0..=n)
                .map(|j| {
                    if linear && j != n {
                        dd::czero()
                    } else {
                        dd::scale(a_pow[j] * b_pow[n - j], sqrt_binom[n][j] * inv_sqrt_fact[n - j])
                    }
                })
                .collect();
            let mut col = Vec::with_capacity(dim);
            let mut worst = 0.0f64;
            for k in 0..dim {
                let lo = if linear { n } else { 0 };
                let mut acc = dd::czero();
                let mut abs_sum = 0.0;
                for j in lo..=n.min(k) {
                    let term = dd::scale(poly[j] * psi_hat[k - j], sqrt_binom[k][j]);
                    abs_sum += dd::to_c64(term).norm();
                    acc += term;
                }
                worst = worst.max(abs_sum * (n.min(k) + 2) as f64);
                col.push(dd::to_c64(acc));
            }
            (col, worst * DD_EPS)
        })
        .collect();

    let mut matrix = CMatrix::zeros(dim, dim);
    let mut rounding_bound = 0.0f64;
    for (n, (col, bound)) in columns.into_iter().enumerate() {
        rounding_bound = rounding_bound.max(bound);
        for (k, v) in col.into_iter().enumerate() {
            matrix[(k, n)] = v;
        }
    }
    if rounding_bound > ROUNDING_WARN * matrix.max_abs().max(1.0) {
        warnings.push(format!(
            "cancellation in entry sums: rounding bound {rounding_bound:e} is large relative to the entries"
        ));
    }

    Ok(TruncatedOperator {
        dim,
        matrix,
        psi: psi.clone(),
        phi: phi.clone(),
        warnings,
        rounding_bound,
    })
}

/// Column `n` recomputed independently: expand `ψ(z)·(az+b)^n/√(n!)` as a
/// product in the kernel-polynomial algebra, take its Taylor coefficients and
/// rescale by `√(k!)`.
pub fn apply_column_oracle(psi: &EntireSymbol, phi: &AffineMap, n: usize, dim: usize) -> Result<Vec<Complex64>> {
    if n >= dim {
        return Err(Error::InvalidInput(format!("column {n} outside dimension {dim}")));
    }
    let inv_sqrt_nfact = 1.0 / (1..=n).map(|i| i as f64).product::<f64>().sqrt();
    let mut binom = 1.0f64;
    let coeffs: Vec<Complex64> = (0..=n)
        .map(|j| {
            if j > 0 {
                binom = binom * (n - j + 1) as f64 / j as f64;
            }
            phi.a().pow(j as u64) * phi.b().powu((n - j) as u32) * (binom * inv_sqrt_nfact)
        })
        .collect();
    let product = psi.mul(&EntireSymbol::polynomial(&coeffs));
    let mut sqrt_fact = 1.0f64;
    Ok(product
        .taylor_coefficients(dim)
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            if k > 0 {
                sqrt_fact *= (k as f64).sqrt();
            }
            t * sqrt_fact
        })
        .collect())
}

/// Compression of `C_{q,az}` to `span{e_n, e_{n+m}}`:
/// `[[q̂_0·a^n, 0], [q̂_m·a^n·√C(n+m, m), q̂_0·a^{n+m}]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Compression2x2 {
    pub top_left: Complex64,
    pub top_right: Complex64,
    pub bottom_left: Complex64,
    pub bottom_right: Complex64,
    pub n: usize,
    pub m: usize,
}

impl Compression2x2 {
    /// A lower-triangular `[[alpha, 0], [gamma, beta]]` not tied to any
    /// operator.
    pub fn lower_triangular(alpha: Complex64, gamma: Complex64, beta: Complex64) -> Self {
        Self {
            top_left: alpha,
            top_right: Complex64::new(0.0, 0.0),
            bottom_left: gamma,
            bottom_right: beta,
            n: 0,
            m: 1,
        }
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_rows(vec![
            vec![self.top_left, self.top_right],
            vec![self.bottom_left, self.bottom_right],
        ])
        .expect("2x2 rows")
    }

    pub fn is_nilpotent(&self) -> bool {
        self.top_left == Complex64::new(0.0, 0.0) && self.bottom_right == Complex64::new(0.0, 0.0)
    }
}

/// `√C(n+m, m)` by a running product.
pub(crate) fn sqrt_binomial(n: usize, m: usize) -> f64 {
    (1..=m).map(|i| (n + i) as f64 / i as f64).product::<f64>().sqrt()
}

pub fn compression(data: &ConjugationData, a: &PolarRationalAngle, n: usize, m: usize) -> Result<Compression2x2> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive; span{e_n, e_n} is degenerate".into()));
    }
    if data.qhat.len() <= m {
        return Err(Error::InvalidInput(format!(
            "need q-hat coefficients up to index {m}, have {}",
            data.qhat.len()
        )));
    }
    let q0 = data.qhat[0];
    let an = a.pow(n as u64);
    Ok(Compression2x2 {
        top_left: q0 * an,
        top_right: Complex64::new(0.0, 0.0),
        bottom_left: data.qhat[m] * an * sqrt_binomial(n, m),
        bottom_right: q0 * a.pow((n + m) as u64),
        n,
        m,
    })
}

impl TruncatedOperator {
    /// Row-major CSV, one quoted `re,im` cell per entry.
    pub fn to_csv(&self) -> Result<String> {
        matrix_to_csv(&self.matrix)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "entries": matrix_entries(&self.matrix),
            "rounding_bound": self.rounding_bound,
            "warnings": self.warnings,
        })
    }
}

fn matrix_entries(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn matrix_to_csv(m: &CMatrix) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        w.write_record(&cells).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn matrix_from_csv(text: &str) -> Result<CMatrix> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("line {}: {e}", line + 1)))?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(col, cell)| parse_cell(cell).ok_or_else(|| Error::Parse(format!("line {}, cell {}: expected \"re,im\", got {cell:?}", line + 1, col + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let m = CMatrix::from_rows(rows)?;
    if !m.is_square() {
        return Err(Error::Parse(format!("matrix is {}x{}, expected square", m.rows(), m.cols())));
    }
    Ok(m)
}

fn parse_cell(cell: &str) -> Option<Complex64> {
    let (re, im) = cell.split_once(',')?;
    Some(Complex64::new(re.trim().parse().ok()?, im.trim().parse().ok()?))
}

#[derive(Deserialize)]
struct MatrixJson {
    entries: Vec<Vec<[f64; 2]>>,
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = parsed
        .entries
        .into_iter()
        .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .collect();
    let m = CMatrix::from_rows(rows)?;
    if !m.is_square() {
        return Err(Error::Parse(format!("matrix is {}x{}, expected square", m.rows(), m.cols())));
    }
    Ok(m)
}
