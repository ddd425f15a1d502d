//! Shared numeric foundation: dense complex matrices, unitary
//! triangularization, singular values, exact real-coefficient polynomials with
//! Sturm root counting, and the classical eigenvalue bounds derived from the
//! triangular form.

mod bounds;
mod eigen;
mod rpoly;
mod svd;

pub use bounds::{spectral_bounds, SpectralBoundsReport};
pub use eigen::{schur_decompose, SchurDecomposition};
pub use rpoly::{
    sturm_real_root_count, Bound, RealPoly, SquareFreeFactor,
};
pub use svd::{svd, Svd};

use num_complex::Complex64;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("iteration budget exhausted before convergence")]
    NonConvergence,
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("matrix shapes are incompatible: {0}")]
    ShapeMismatch(String),
    #[error("matrix entries must be finite")]
    NonFiniteEntry,
    #[error("operation requires a square matrix")]
    NotSquare,
}

/// Dense complex matrix, row-major, value semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major complex entries, rejecting NaN/infinity.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(AlgebraError::NonFiniteEntry);
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgebraError::ShapeMismatch("ragged rows".into()));
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_vec(r, c, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        let data = self.data.iter().map(|a| a * s).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self[(i, j)] - self[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let (piv, piv_abs) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if piv_abs == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(piv, j)];
                    a[(piv, j)] = t;
                }
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    let t = f * a[(k, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        det
    }

    /// Eigenvalues of `self`, unordered multiset.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>, AlgebraError> {
        Ok(schur_decompose(self, DEFAULT_TOL)?.t.diag())
    }

    /// Spectral norm via the singular value decomposition.
    pub fn spectral_norm(&self) -> Result<f64, AlgebraError> {
        Ok(svd(self, DEFAULT_TOL)?.sigma.first().copied().unwrap_or(0.0))
    }

    /// Hermitian PSD test: smallest eigenvalue at least `-margin`.
    pub fn is_psd(&self, margin: f64) -> Result<bool, AlgebraError> {
        let eig = self.eigenvalues()?;
        Ok(eig.iter().all(|l| l.re >= -margin))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Companion matrix of a monic-normalized polynomial given by ascending
/// coefficients; its eigenvalues are the polynomial roots.
pub fn companion(coeffs: &[Complex64]) -> Result<ComplexMatrix, AlgebraError> {
    let deg = coeffs
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .ok_or(AlgebraError::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(ComplexMatrix::zeros(0, 0));
    }
    let lead = coeffs[deg];
    let mut m = ComplexMatrix::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -coeffs[i] / lead;
    }
    Ok(m)
}

/// Roots of a complex-coefficient polynomial by the companion-matrix route.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, AlgebraError> {
    let c = companion(coeffs)?;
    if c.rows() == 0 {
        return Ok(vec![]);
    }
    c.eigenvalues()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_nan() {
        let bad = ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]);
        assert_eq!(bad.unwrap_err(), AlgebraError::NonFiniteEntry);
    }

    #[test]
    fn det_2x2() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!((a.det() - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn companion_roots_quadratic() {
        // z^2 + 1 has roots +-i
        let roots = poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let mut ims: Vec<f64> = roots.iter().map(|r| r.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-10 && (ims[1] - 1.0).abs() < 1e-10);
        assert!(roots.iter().all(|r| r.re.abs() < 1e-10));
    }

    #[test]
    fn adjoint_involution() {
        let a = ComplexMatrix::from_vec(2, 3, (0..6).map(|k| c(k as f64, -(k as f64))).collect()).unwrap();
        assert_eq!(a.adjoint().adjoint(), a);
    }
}
