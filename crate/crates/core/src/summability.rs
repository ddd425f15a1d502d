//! Classification of sequence-to-sequence matrix transforms as convergence
//! preserving, regular, or convergence generating, from finite-section
//! evidence, plus the Hölder and Cesàro mean matrices and their equivalence
//! check. Verdicts are evidence at the reported truncation, never proofs.

use crate::exact::rat_to_f64;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SummabilityError {
    #[error("requested prefix length {n} exceeds the declared truncation {max}")]
    TruncationExceeded { n: usize, max: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("triangular section is singular")]
    SingularSection,
}

/// A matrix transform given by its entry generator a(n, k), 1-indexed, with a
/// declared truncation bound.
#[derive(Clone)]
pub struct TransformMatrix {
    generator: Arc<dyn Fn(usize, usize) -> Complex64 + Send + Sync>,
    truncation: usize,
}

impl std::fmt::Debug for TransformMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TransformMatrix(truncation {})", self.truncation)
    }
}

impl TransformMatrix {
    pub fn new(
        truncation: usize,
        generator: impl Fn(usize, usize) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        TransformMatrix { generator: Arc::new(generator), truncation }
    }

    pub fn identity(truncation: usize) -> Self {
        Self::new(truncation, |n, k| {
            Complex64::new(if n == k { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// Cesàro first-order means: a_nk = 1/n for k <= n.
    pub fn cesaro(truncation: usize) -> Self {
        Self::new(truncation, |n, k| {
            Complex64::new(if k <= n { 1.0 / n as f64 } else { 0.0 }, 0.0)
        })
    }

    /// a_nk = 2^{-k} (1 + 1/n): bounded rows with uniformly summable tails.
    pub fn geometric(truncation: usize) -> Self {
        Self::new(truncation, |n, k| {
            Complex64::new(0.5f64.powi(k as i32) * (1.0 + 1.0 / n as f64), 0.0)
        })
    }

    /// Dense table of precomputed entries (row-major, 1-indexed access).
    pub fn from_table(rows: Vec<Vec<Complex64>>) -> Self {
        let truncation = rows.len();
        Self::new(truncation, move |n, k| {
            rows.get(n - 1)
                .and_then(|r| r.get(k - 1))
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0))
        })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn entry(&self, n: usize, k: usize) -> Complex64 {
        (self.generator)(n, k)
    }

    /// One output row: y_m = sum_{k<=N} a_mk x_k.
    pub fn apply_row(&self, x: &dyn Fn(usize) -> Complex64, m: usize) -> Result<Complex64, SummabilityError> {
        if m > self.truncation || m == 0 {
            return Err(SummabilityError::TruncationExceeded { n: m, max: self.truncation });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=self.truncation {
            acc += self.entry(m, k) * x(k);
        }
        Ok(acc)
    }
}

/// Transformed prefix y_1..y_n.
pub fn apply_transform(
    a: &TransformMatrix,
    x: &dyn Fn(usize) -> Complex64,
    n: usize,
) -> Result<Vec<Complex64>, SummabilityError> {
    if n > a.truncation() {
        return Err(SummabilityError::TruncationExceeded { n, max: a.truncation() });
    }
    (1..=n).map(|m| a.apply_row(x, m)).collect()
}

/// Finite-section classification evidence.
#[derive(Debug, Clone)]
pub struct Classification {
    pub preserving: bool,
    pub regular: bool,
    pub generating: bool,
    /// Extrapolated column limits a_k for the leading columns.
    pub column_limits: Vec<Complex64>,
    /// Extrapolated row-sum limit sigma.
    pub row_sum_limit: Complex64,
    /// Largest row norm seen across the grid.
    pub row_norm_sup: f64,
    /// Sum of the estimated column limits.
    pub alpha: Complex64,
    /// Largest truncation consulted; all verdicts are evidence at this size.
    pub evidence_truncation: usize,
}

/// Aitken delta-squared extrapolation of the last three grid values; exact
/// for sequences of the form b + c r^k. Falls back to the raw last value
/// when the differences contract too weakly for the model (near-arithmetic
/// decay makes the denominator cancel and the estimate wild).
fn aitken(vals: &[Complex64]) -> Complex64 {
    let n = vals.len();
    if n < 3 {
        return vals[n - 1];
    }
    let (a1, a2, a3) = (vals[n - 3], vals[n - 2], vals[n - 1]);
    let d2 = a3 - a2;
    let d1 = a2 - a1;
    let den = d2 - d1;
    if den.norm() <= 0.05 * (d1.norm() + d2.norm()).max(1e-300) {
        return a3;
    }
    let ex = a3 - d2 * d2 / den;
    if (ex - a3).norm() > 10.0 * d2.norm() {
        return a3;
    }
    ex
}

/// Convergence evidence: differences vanish or decay by a factor <= 0.9.
fn converging(vals: &[Complex64], tol: f64) -> bool {
    if vals.len() < 2 {
        return true;
    }
    let diffs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let last = *diffs.last().unwrap();
    if last <= tol {
        return true;
    }
    diffs.windows(2).all(|w| w[1] <= 0.9 * w[0])
}

/// Classifies the transform from evidence on the given truncation grid.
pub fn classify(a: &TransformMatrix, n_grid: &[usize], tol: f64) -> Classification {
    assert!(!n_grid.is_empty() && n_grid.windows(2).all(|w| w[0] < w[1]), "grid must increase");
    assert!(tol > 0.0);
    let n_max = (*n_grid.last().unwrap()).min(a.truncation());
    let grid: Vec<usize> = n_grid.iter().map(|&n| n.min(a.truncation())).collect();

    // Column limits for the leading columns, extrapolated down the grid.
    // Columns at or beyond the first sampled row carry no limit evidence.
    let k_report = 16usize.min(grid[0]);
    let mut column_limits = Vec::with_capacity(k_report);
    let mut columns_converge = true;
    for k in 1..=k_report {
        let vals: Vec<Complex64> = grid.iter().map(|&n| a.entry(n, k)).collect();
        columns_converge &= converging(&vals, tol);
        column_limits.push(aitken(&vals));
    }

    // Row sums and row norms along the grid rows.
    let row_sum = |n: usize| -> Complex64 { (1..=n_max).map(|k| a.entry(n, k)).sum() };
    let row_norm = |n: usize| -> f64 { (1..=n_max).map(|k| a.entry(n, k).norm()).sum() };
    let sums: Vec<Complex64> = grid.iter().map(|&n| row_sum(n)).collect();
    let norms: Vec<f64> = grid.iter().map(|&n| row_norm(n)).collect();
    let row_sum_limit = aitken(&sums);
    let sums_converge = converging(&sums, tol);
    let row_norm_sup = norms.iter().fold(0.0f64, |a, &b| a.max(b));
    // Bounded-norm evidence: the last row norm does not keep growing.
    let norms_bounded = norms.len() < 2 || {
        let prev = norms[norms.len() - 2].max(1e-300);
        norms[norms.len() - 1] <= 1.25 * prev + tol
    };

    let preserving = columns_converge && sums_converge && norms_bounded;
    let regular = preserving
        && column_limits.iter().all(|c| c.norm() <= tol)
        && (row_sum_limit - Complex64::new(1.0, 0.0)).norm() <= tol;

    // Theorem-III surrogate: some K <= n_max/2 with uniformly small tails
    // over the sampled rows. K capped at half the section so the check
    // cannot succeed vacuously.
    let mut generating = false;
    if preserving {
        let tail = |n: usize, cut: usize| -> f64 {
            (cut + 1..=n_max).map(|k| a.entry(n, k).norm()).sum()
        };
        let mut cut = 1usize;
        while cut <= n_max / 2 {
            if grid.iter().all(|&n| tail(n, cut) < tol) {
                generating = true;
                break;
            }
            cut *= 2;
        }
    }

    let alpha = column_limits.iter().sum();
    Classification {
        preserving,
        regular,
        generating,
        column_limits,
        row_sum_limit,
        row_norm_sup,
        alpha,
        evidence_truncation: n_max,
    }
}

/// Kinds of mean matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanKind {
    Holder,
    Cesaro,
}

/// Exact lower-triangular n x n section of the order-r Hölder or Cesàro mean
/// matrix. Hölder is the r-fold power of the arithmetic-mean matrix; Cesàro
/// is the r-fold partial-sum matrix normalized by binomial(n + r - 1, r).
pub fn mean_matrix(kind: MeanKind, r: usize, n: usize) -> Result<Vec<Vec<BigRational>>, SummabilityError> {
    if r < 1 || n < 1 {
        return Err(SummabilityError::BadParameter(format!("r = {r}, n = {n}")));
    }
    let zero = BigRational::zero();
    match kind {
        MeanKind::Holder => {
            let mean: Vec<Vec<BigRational>> = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| {
                            if j <= i {
                                BigRational::new(BigInt::one(), BigInt::from(i))
                            } else {
                                zero.clone()
                            }
                        })
                        .collect()
                })
                .collect();
            let mut acc = mean.clone();
            for _ in 1..r {
                acc = mat_mul_rational(&acc, &mean);
            }
            Ok(acc)
        }
        MeanKind::Cesaro => {
            let sums: Vec<Vec<BigRational>> = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| if j <= i { BigRational::one() } else { zero.clone() })
                        .collect()
                })
                .collect();
            let mut acc = sums.clone();
            for _ in 1..r {
                acc = mat_mul_rational(&acc, &sums);
            }
            for (i, row) in acc.iter_mut().enumerate() {
                let norm = binom_rational(i + 1 + r - 1, r);
                for e in row.iter_mut() {
                    *e = &*e / &norm;
                }
            }
            Ok(acc)
        }
    }
}

fn binom_rational(n: usize, k: usize) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

fn mat_mul_rational(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let add = &a[i][k] * &b[k][j];
                out[i][j] += add;
            }
        }
    }
    out
}

/// Inverse of an exact lower-triangular matrix by forward substitution.
fn lower_triangular_inverse(a: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>, SummabilityError> {
    let n = a.len();
    let mut inv = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        if a[i][i].is_zero() {
            return Err(SummabilityError::SingularSection);
        }
    }
    for col in 0..n {
        for i in col..n {
            let mut acc = if i == col { BigRational::one() } else { BigRational::zero() };
            for k in col..i {
                let sub = &a[i][k] * &inv[k][col];
                acc -= sub;
            }
            inv[i][col] = acc / a[i][i].clone();
        }
    }
    Ok(inv)
}

/// Regularity evidence for an exact lower-triangular section, judged by
/// [`classify`] on the geometric sub-grid n/4, n/2, n.
fn regular_evidence(m: Vec<Vec<BigRational>>, n: usize, tol: f64) -> bool {
    let table: Vec<Vec<Complex64>> = m
        .iter()
        .map(|row| row.iter().map(|e| Complex64::new(rat_to_f64(e), 0.0)).collect())
        .collect();
    let t = TransformMatrix::from_table(table);
    let grid = [(n / 4).max(2), (n / 2).max(3), n];
    classify(&t, &grid, tol).regular
}

/// Checks that both mixed sections (H^r)^{-1} C^r and (C^r)^{-1} H^r satisfy
/// the Theorem-II evidence criteria at truncation n within tol.
pub fn equivalence_check(r: usize, n: usize, tol: f64) -> Result<bool, SummabilityError> {
    if !(1..=4).contains(&r) || n < 8 || n > 200 {
        return Err(SummabilityError::BadParameter(format!("r = {r}, n = {n}")));
    }
    let h = mean_matrix(MeanKind::Holder, r, n)?;
    let c = mean_matrix(MeanKind::Cesaro, r, n)?;
    let hc = mat_mul_rational(&lower_triangular_inverse(&h)?, &c);
    let ch = mat_mul_rational(&lower_triangular_inverse(&c)?, &h);
    Ok(regular_evidence(hc, n, tol) && regular_evidence(ch, n, tol))
}

/// Iterated Hölder means of a real sequence prefix, order r (plain f64).
pub fn holder_means(x: &[f64], r: usize) -> Vec<f64> {
    let mut y: Vec<f64> = x.to_vec();
    for _ in 0..r {
        let mut run = 0.0;
        for (i, v) in y.iter_mut().enumerate() {
            run += *v;
            *v = run / (i + 1) as f64;
        }
    }
    y
}

/// Iterated Cesàro means of order r: r-fold partial sums normalized by
/// binomial(n + r - 1, r).
pub fn cesaro_means(x: &[f64], r: usize) -> Vec<f64> {
    let mut s: Vec<f64> = x.to_vec();
    for _ in 0..r {
        let mut run = 0.0;
        for v in s.iter_mut() {
            run += *v;
            *v = run;
        }
    }
    s.iter()
        .enumerate()
        .map(|(i, &v)| {
            let n = i + 1;
            let mut b = 1.0;
            for t in 0..r {
                b = b * (n + r - 1 - t) as f64 / (t + 1) as f64;
            }
            v / b
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    const GRID: [usize; 3] = [64, 128, 256];

    fn ones(_k: usize) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn identity_is_regular_not_generating() {
        let c = classify(&TransformMatrix::identity(256), &GRID, 1e-6);
        assert!(c.preserving && c.regular && !c.generating);
        assert!(c.column_limits.iter().all(|a| a.norm() < 1e-9));
        assert!((c.row_sum_limit.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cesaro_is_regular() {
        let c = classify(&TransformMatrix::cesaro(256), &GRID, 1e-6);
        assert!(c.preserving && c.regular, "{c:?}");
        assert!(!c.generating);
    }

    #[test]
    fn geometric_is_generating() {
        let c = classify(&TransformMatrix::geometric(256), &GRID, 1e-6);
        assert!(c.preserving && c.generating, "{c:?}");
        assert!(!c.regular);
        // Column limits 2^{-k}
        assert!((c.column_limits[0].re - 0.5).abs() < 1e-9);
        assert!((c.column_limits[1].re - 0.25).abs() < 1e-9);
    }

    #[test]
    fn cesaro_of_alternating_reaches_half() {
        let a = TransformMatrix::cesaro(10_000);
        let x = |k: usize| Complex64::new((1.0 + if k % 2 == 0 { 1.0 } else { -1.0 }) / 2.0, 0.0);
        let y = a.apply_row(&x, 10_000).unwrap();
        assert!((y.re - 0.5).abs() < 1e-3);
    }

    #[test]
    fn geometric_limit_on_ones() {
        let a = TransformMatrix::geometric(4096);
        let y = a.apply_row(&ones, 4096).unwrap();
        // sum 2^{-k} -> 1 (finite-section with tiny tail), times (1 + 1/n)
        assert!((y.re - 1.0).abs() < 1e-3, "{y}");
    }

    #[test]
    fn holder_mean_sections_exact() {
        let h1 = mean_matrix(MeanKind::Holder, 1, 2).unwrap();
        assert_eq!(h1[1], vec![ratio(1, 2), ratio(1, 2)]);
        let h2 = mean_matrix(MeanKind::Holder, 2, 2).unwrap();
        assert_eq!(h2[1], vec![ratio(3, 4), ratio(1, 4)]);
        // Order 1: Hölder and Cesàro coincide.
        let c1 = mean_matrix(MeanKind::Cesaro, 1, 4).unwrap();
        let h1 = mean_matrix(MeanKind::Holder, 1, 4).unwrap();
        assert_eq!(c1, h1);
    }

    #[test]
    fn cesaro_row_sums_are_one() {
        for r in 1..=3 {
            let c = mean_matrix(MeanKind::Cesaro, r, 6).unwrap();
            for row in &c {
                let s: BigRational = row.iter().sum();
                assert_eq!(s, rat(1));
            }
        }
    }

    #[test]
    fn triangular_inverse_exact() {
        let h = mean_matrix(MeanKind::Holder, 2, 5).unwrap();
        let inv = lower_triangular_inverse(&h).unwrap();
        let prod = mat_mul_rational(&h, &inv);
        for (i, row) in prod.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*e, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn equivalence_small_orders() {
        assert!(equivalence_check(1, 16, 1e-9).unwrap());
        assert!(equivalence_check(2, 100, 1e-3).unwrap());
    }

    #[test]
    fn means_of_alternating_tend_half() {
        let x: Vec<f64> = (1..=10_000).map(|k| (1.0 + if k % 2 == 0 { 1.0 } else { -1.0 }) / 2.0).collect();
        for r in 1..=3 {
            let h = holder_means(&x, r);
            let c = cesaro_means(&x, r);
            let herr = (h.last().unwrap() - 0.5).abs();
            let herr_mid = (h[4999] - 0.5).abs();
            assert!(herr < 2e-3 && herr <= herr_mid, "holder r={r}: {herr} vs {herr_mid}");
            assert!((c.last().unwrap() - 0.5).abs() < 1e-3, "cesaro r={r}");
        }
    }

    #[test]
    fn truncation_guard() {
        let a = TransformMatrix::identity(8);
        let err = apply_transform(&a, &ones, 9).unwrap_err();
        assert_eq!(err, SummabilityError::TruncationExceeded { n: 9, max: 8 });
    }
}


