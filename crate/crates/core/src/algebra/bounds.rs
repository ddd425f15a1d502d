//! Classical eigenvalue bounds obtained from the unitary triangular form:
//! the trace inequality, Hirsch/Bendixson estimates, and the eigenvalue-gap
//! and discriminant bounds.

use super::{schur_decompose, AlgebraError, ComplexMatrix, DEFAULT_TOL};
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct SpectralBoundsReport {
    /// Sum of squared entry moduli; dominates the squared eigenvalue moduli.
    pub frobenius_sq: f64,
    /// n * max |a_jk|, a bound on every |lambda|.
    pub hirsch: f64,
    /// n * max entry of (A + A*)/2, bounding |Re lambda|.
    pub hirsch_re: f64,
    /// n * max entry of (A - A*)/(2i), bounding |Im lambda|.
    pub hirsch_im: f64,
    /// sqrt(n(n-1)/2) * max entry of (A - A*)/(2i); real input only.
    pub bendixson_im: Option<f64>,
    /// Sum over pairs of squared eigenvalue gaps.
    pub ford_lhs: f64,
    /// Pair gaps of the diagonal plus n times the off-diagonal mass.
    pub ford_rhs: f64,
    /// Bound on |discriminant|^{2/(n(n-1))}.
    pub discriminant_bound: f64,
    /// Eigenvalues used for the left-hand sides.
    pub eigenvalues: Vec<Complex64>,
}

/// Computes the full bounds report for a square matrix.
pub fn spectral_bounds(a: &ComplexMatrix) -> Result<SpectralBoundsReport, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::NotSquare);
    }
    let n = a.rows();
    let nf = n as f64;
    let frobenius_sq = a.data().iter().map(|z| z.norm_sqr()).sum::<f64>();
    let hirsch = nf * a.max_abs();

    let adj = a.adjoint();
    let b = a.add(&adj).scale(Complex64::new(0.5, 0.0));
    let c = a.sub(&adj).scale(Complex64::new(0.0, -0.5));
    let hirsch_re = nf * b.max_abs();
    let hirsch_im = nf * c.max_abs();
    let bendixson_im = if a.is_real(0.0) && n >= 1 {
        Some((nf * (nf - 1.0) / 2.0).sqrt() * c.max_abs())
    } else {
        None
    };

    let eigenvalues = if n == 0 {
        vec![]
    } else {
        schur_decompose(a, DEFAULT_TOL)?.eigenvalues()
    };

    let mut ford_lhs = 0.0;
    let mut diag_gaps = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            ford_lhs += (eigenvalues[j] - eigenvalues[k]).norm_sqr();
            diag_gaps += (a[(j, j)] - a[(k, k)]).norm_sqr();
        }
    }
    let mut offdiag_sq = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j != k {
                offdiag_sq += a[(j, k)].norm_sqr();
            }
        }
    }
    let ford_rhs = diag_gaps + nf * offdiag_sq;
    let discriminant_bound = if n >= 2 {
        2.0 / (nf * (nf - 1.0)) * diag_gaps + 2.0 / (nf - 1.0) * offdiag_sq
    } else {
        0.0
    };

    Ok(SpectralBoundsReport {
        frobenius_sq,
        hirsch,
        hirsch_re,
        hirsch_im,
        bendixson_im,
        ford_lhs,
        ford_rhs,
        discriminant_bound,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nilpotent_trace_bound() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = spectral_bounds(&a).unwrap();
        let lam_sq: f64 = r.eigenvalues.iter().map(|l| l.norm_sqr()).sum();
        assert!(lam_sq < 1e-20);
        assert!((r.frobenius_sq - 1.0).abs() < 1e-15);
    }

    #[test]
    fn all_ones_attains_hirsch() {
        let a = ComplexMatrix::from_fn(3, 3, |_, _| c(1.0, 0.0));
        let r = spectral_bounds(&a).unwrap();
        assert!((r.hirsch - 3.0).abs() < 1e-12);
        let lam_max = r.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max);
        assert!((lam_max - 3.0).abs() < 1e-10);
    }

    #[test]
    fn rotation_attains_bendixson() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let r = spectral_bounds(&a).unwrap();
        let bend = r.bendixson_im.unwrap();
        assert!((bend - 1.0).abs() < 1e-12);
        let im_max = r.eigenvalues.iter().map(|l| l.im.abs()).fold(0.0, f64::max);
        assert!((im_max - 1.0).abs() < 1e-10);
    }

    #[test]
    fn complex_input_has_no_bendixson() {
        let a = ComplexMatrix::diagonal(&[c(0.0, 1.0)]);
        assert!(spectral_bounds(&a).unwrap().bendixson_im.is_none());
    }
}
