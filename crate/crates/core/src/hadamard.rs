//! Schur-test operator-norm bounds (plain and weighted), entrywise products,
//! multiplier bounds for positive semidefinite and factorized multipliers,
//! and the classical gallery of structured matrices.

use crate::algebra::{svd, AlgebraError, ComplexMatrix, DEFAULT_TOL};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HadamardError {
    #[error("weights must be strictly positive")]
    NonPositiveWeight,
    #[error("matrices must share a shape: {0}")]
    ShapeMismatch(String),
    #[error("multiplier matrix is not Hermitian positive semidefinite")]
    NotPSD,
    #[error("H does not match the declared factorization L M*")]
    FactorizationMismatch,
    #[error("bad gallery parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Row/column absolute-sum bound on the spectral norm.
#[derive(Debug, Clone)]
pub struct SchurTestReport {
    /// Largest (weighted) row absolute sum.
    pub zeta: f64,
    /// Largest (weighted) column absolute sum.
    pub kappa: f64,
    /// sqrt(zeta * kappa) >= ||A||_2.
    pub bound: f64,
    pub weights: Option<Vec<f64>>,
}

/// The Schur test: zeta = sup_j sum_k |a_jk|, kappa = sup_k sum_j |a_jk|,
/// optionally weighted as zeta_r = sup_j r_j^{-1} sum_k |a_jk| r_k and the
/// transposed kappa_r. One weight sequence of length >= max(rows, cols)
/// serves both axes.
pub fn schur_test(a: &ComplexMatrix, weights: Option<&[f64]>) -> Result<SchurTestReport, HadamardError> {
    let (rows, cols) = (a.rows(), a.cols());
    if let Some(w) = weights {
        if w.len() < rows.max(cols) {
            return Err(HadamardError::ShapeMismatch(format!(
                "need {} weights, got {}",
                rows.max(cols),
                w.len()
            )));
        }
        if w.iter().any(|&x| !(x > 0.0)) {
            return Err(HadamardError::NonPositiveWeight);
        }
    }
    let wt = |k: usize| weights.map_or(1.0, |w| w[k]);
    let mut zeta = 0.0f64;
    for j in 0..rows {
        let s: f64 = (0..cols).map(|k| a[(j, k)].norm() * wt(k)).sum();
        zeta = zeta.max(s / wt(j));
    }
    let mut kappa = 0.0f64;
    for k in 0..cols {
        let s: f64 = (0..rows).map(|j| a[(j, k)].norm() * wt(j)).sum();
        kappa = kappa.max(s / wt(k));
    }
    Ok(SchurTestReport {
        zeta,
        kappa,
        bound: (zeta * kappa).sqrt(),
        weights: weights.map(|w| w.to_vec()),
    })
}

/// Entrywise product.
pub fn schur_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, HadamardError> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(HadamardError::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] * b[(i, j)]))
}

/// Which multiplier estimate to certify.
#[derive(Debug, Clone)]
pub enum MultiplierMode {
    /// H Hermitian PSD; the constant is the largest diagonal entry.
    PsdDiag,
    /// H = L M*; the constant is sqrt(D_L D_M) with D_L, D_M the largest
    /// squared row norms of the factors.
    Factorized { l: ComplexMatrix, m: ComplexMatrix },
}

#[derive(Debug, Clone)]
pub struct MultiplierReport {
    /// The certified multiplier constant.
    pub d_h: f64,
    /// ||H o A||_2.
    pub lhs: f64,
    /// d_h * ||A||_2.
    pub rhs: f64,
}

pub fn multiplier_bound(
    h: &ComplexMatrix,
    a: &ComplexMatrix,
    mode: &MultiplierMode,
) -> Result<MultiplierReport, HadamardError> {
    let d_h = match mode {
        MultiplierMode::PsdDiag => {
            if !h.is_hermitian(1e-10 * h.max_abs().max(1.0)) {
                return Err(HadamardError::NotPSD);
            }
            let trace: f64 = h.diag().iter().map(|z| z.re).sum();
            if !h.is_psd(1e-10 * trace.abs().max(1.0))? {
                return Err(HadamardError::NotPSD);
            }
            h.diag().iter().map(|z| z.re).fold(0.0, f64::max)
        }
        MultiplierMode::Factorized { l, m } => {
            if l.rows() != h.rows() || m.rows() != h.cols() || l.cols() != m.cols() {
                return Err(HadamardError::FactorizationMismatch);
            }
            let lm = l.mul(&m.adjoint());
            if lm.sub(h).max_abs() > 1e-10 * h.max_abs().max(1.0) {
                return Err(HadamardError::FactorizationMismatch);
            }
            let row_sq = |x: &ComplexMatrix| -> f64 {
                (0..x.rows())
                    .map(|i| (0..x.cols()).map(|j| x[(i, j)].norm_sqr()).sum::<f64>())
                    .fold(0.0, f64::max)
            };
            (row_sq(l) * row_sq(m)).sqrt()
        }
    };
    let ha = schur_product(h, a)?;
    let lhs = svd(&ha, DEFAULT_TOL)?.sigma.first().copied().unwrap_or(0.0);
    let norm_a = svd(a, DEFAULT_TOL)?.sigma.first().copied().unwrap_or(0.0);
    Ok(MultiplierReport { d_h, lhs, rhs: d_h * norm_a })
}

/// Named principal sections of the classical infinite matrices.
#[derive(Debug, Clone)]
pub enum GalleryMatrix {
    /// 1/(p+q-1), 1-indexed.
    HilbertPlus,
    /// 1/(p-q) off the diagonal, zero diagonal.
    HilbertMinus,
    /// 1/(p+q-1+lambda), lambda in (0,1).
    GeneralizedHilbert { lambda: f64 },
    /// sin((p-q)t)/(p-q) off the diagonal, zero diagonal, |t| < pi.
    SineForm { t: f64 },
    /// 1/(lambda_p + mu_q) from two positive sequences.
    Cauchy { lambdas: Vec<f64>, mus: Vec<f64> },
}

/// n x n principal section of the named matrix, exactly as printed.
pub fn matrix_gallery(name: &GalleryMatrix, n: usize) -> Result<ComplexMatrix, HadamardError> {
    if n < 1 {
        return Err(HadamardError::BadParameter("n must be at least 1".into()));
    }
    let real = |f: &dyn Fn(usize, usize) -> f64| {
        ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(f(i + 1, j + 1), 0.0))
    };
    match name {
        GalleryMatrix::HilbertPlus => Ok(real(&|p, q| 1.0 / (p + q - 1) as f64)),
        GalleryMatrix::HilbertMinus => Ok(real(&|p, q| {
            if p == q {
                0.0
            } else {
                1.0 / (p as f64 - q as f64)
            }
        })),
        GalleryMatrix::GeneralizedHilbert { lambda } => {
            if !(0.0..1.0).contains(lambda) || *lambda == 0.0 {
                return Err(HadamardError::BadParameter(format!("lambda = {lambda}")));
            }
            Ok(real(&|p, q| 1.0 / ((p + q - 1) as f64 + lambda)))
        }
        GalleryMatrix::SineForm { t } => {
            if !(-std::f64::consts::PI..std::f64::consts::PI).contains(t) {
                return Err(HadamardError::BadParameter(format!("t = {t}")));
            }
            Ok(real(&|p, q| {
                if p == q {
                    0.0
                } else {
                    let d = p as f64 - q as f64;
                    (d * t).sin() / d
                }
            }))
        }
        GalleryMatrix::Cauchy { lambdas, mus } => {
            if lambdas.len() < n || mus.len() < n {
                return Err(HadamardError::BadParameter("sequence shorter than n".into()));
            }
            if lambdas[..n].iter().chain(&mus[..n]).any(|&x| !(x > 0.0)) {
                return Err(HadamardError::BadParameter("sequences must be positive".into()));
            }
            Ok(real(&|p, q| 1.0 / (lambdas[p - 1] + mus[q - 1])))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_is_tight() {
        let r = schur_test(&ComplexMatrix::identity(4), None).unwrap();
        assert_eq!((r.zeta, r.kappa, r.bound), (1.0, 1.0, 1.0));
    }

    #[test]
    fn hilbert_3x3_row_sums() {
        let h = matrix_gallery(&GalleryMatrix::HilbertPlus, 3).unwrap();
        let r = schur_test(&h, None).unwrap();
        let want = 1.0 + 0.5 + 1.0 / 3.0;
        assert!((r.zeta - want).abs() < 1e-15);
        assert!((r.kappa - want).abs() < 1e-15);
        let norm = h.spectral_norm().unwrap();
        assert!((norm - 1.4083).abs() < 1e-3);
        assert!(r.bound >= norm);
    }

    #[test]
    fn toeplitz_band_bound() {
        // a_jk = w_{j-k} with w = (1, 1/2, 1/4): bound <= sum |w| = 1.75.
        let w = [1.0, 0.5, 0.25];
        let a = ComplexMatrix::from_fn(8, 8, |j, k| {
            if j >= k && j - k < 3 {
                c(w[j - k])
            } else {
                c(0.0)
            }
        });
        let r = schur_test(&a, None).unwrap();
        assert!(r.bound <= 1.75 + 1e-12);
        assert!(r.bound >= a.spectral_norm().unwrap() - 1e-9);
    }

    #[test]
    fn weighted_test_requires_positive_weights() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(
            schur_test(&a, Some(&[1.0, 0.0])),
            Err(HadamardError::NonPositiveWeight)
        ));
    }

    #[test]
    fn product_shapes() {
        let a = ComplexMatrix::identity(2);
        let ones = ComplexMatrix::from_fn(2, 2, |_, _| c(1.0));
        assert_eq!(schur_product(&a, &ones).unwrap(), a);
        let wide = ComplexMatrix::zeros(2, 3);
        assert!(matches!(schur_product(&a, &wide), Err(HadamardError::ShapeMismatch(_))));
        // [[1, r], [r, 1]] squared entrywise
        let rho = 0.3;
        let m = ComplexMatrix::from_fn(2, 2, |i, j| if i == j { c(1.0) } else { c(rho) });
        let sq = schur_product(&m, &m).unwrap();
        assert!((sq[(0, 1)].re - rho * rho).abs() < 1e-15);
    }

    #[test]
    fn rank_one_product_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 4;
        let a: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let b: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let outer = |v: &[Complex64]| ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        let lhs = schur_product(&outer(&a), &outer(&b)).unwrap();
        let ab: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        assert!(lhs.sub(&outer(&ab)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn multiplier_ones_is_equality() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let ones = ComplexMatrix::from_fn(3, 3, |_, _| c(1.0));
        let a = ComplexMatrix::from_fn(3, 3, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let r = multiplier_bound(&ones, &a, &MultiplierMode::PsdDiag).unwrap();
        assert!((r.d_h - 1.0).abs() < 1e-12);
        assert!((r.lhs - r.rhs).abs() < 1e-9);
    }

    #[test]
    fn cauchy_multiplier_constant() {
        // 1/(p+q) with lambda_p = mu_q = p: PSD with top diagonal 1/2.
        let seq: Vec<f64> = (1..=4).map(|p| p as f64).collect();
        let h = matrix_gallery(&GalleryMatrix::Cauchy { lambdas: seq.clone(), mus: seq }, 4).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let a = ComplexMatrix::from_fn(4, 4, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let r = multiplier_bound(&h, &a, &MultiplierMode::PsdDiag).unwrap();
        assert!((r.d_h - 0.5).abs() < 1e-14);
        assert!(r.lhs <= r.rhs + 1e-9 * r.rhs.max(1.0));
    }

    #[test]
    fn rank_one_diag() {
        let v = [c(0.5), c(-2.0), c(1.0)];
        let h = ComplexMatrix::from_fn(3, 3, |i, j| v[i] * v[j].conj());
        let a = ComplexMatrix::identity(3);
        let r = multiplier_bound(&h, &a, &MultiplierMode::PsdDiag).unwrap();
        assert!((r.d_h - 4.0).abs() < 1e-12);
    }

    #[test]
    fn factorized_mode_checks_product() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut rnd = |r: usize, s: usize| {
            ComplexMatrix::from_fn(r, s, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        };
        let l = rnd(3, 2);
        let m = rnd(3, 2);
        let h = l.mul(&m.adjoint());
        let a = rnd(3, 3);
        let r = multiplier_bound(&h, &a, &MultiplierMode::Factorized { l: l.clone(), m: m.clone() }).unwrap();
        assert!(r.lhs <= r.rhs + 1e-9 * r.rhs.max(1.0));
        let wrong = matrix_gallery(&GalleryMatrix::HilbertPlus, 3).unwrap();
        assert!(matches!(
            multiplier_bound(&wrong, &a, &MultiplierMode::Factorized { l, m }),
            Err(HadamardError::FactorizationMismatch)
        ));
    }

    #[test]
    fn gallery_small_sections() {
        let hp = matrix_gallery(&GalleryMatrix::HilbertPlus, 2).unwrap();
        assert_eq!(hp[(0, 0)].re, 1.0);
        assert_eq!(hp[(0, 1)].re, 0.5);
        assert_eq!(hp[(1, 1)].re, 1.0 / 3.0);
        let hm = matrix_gallery(&GalleryMatrix::HilbertMinus, 2).unwrap();
        assert_eq!(hm[(0, 1)].re, -1.0);
        assert_eq!(hm[(1, 0)].re, 1.0);
        assert_eq!(hm[(0, 0)].re, 0.0);
        let t = 0.7;
        let sf = matrix_gallery(&GalleryMatrix::SineForm { t }, 2).unwrap();
        assert!((sf[(0, 1)].re - t.sin()).abs() < 1e-15);
        assert!((sf[(1, 0)].re - t.sin()).abs() < 1e-15);
        assert!(matches!(
            matrix_gallery(&GalleryMatrix::GeneralizedHilbert { lambda: 1.5 }, 2),
            Err(HadamardError::BadParameter(_))
        ));
    }
}
