//! Solvability of the Taylor-prefix interpolation problem by the Hermitian
//! form I - C*C, cross-checked against the parameter criterion, and the
//! Schur-Cohn root-location test.

use super::rational::{approximant, RationalFn};
use super::{schur_parameters, SchurError, SchurParams, TOL_UNIT};
use crate::algebra::{schur_decompose, ComplexMatrix, DEFAULT_TOL};
use num_complex::Complex64;

/// Upper-triangular Toeplitz section with first row `coeffs`.
pub fn toeplitz_upper(coeffs: &[Complex64], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if j >= i {
            coeffs.get(j - i).copied().unwrap_or(Complex64::new(0.0, 0.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn min_eigenvalue_hermitian(h: &ComplexMatrix) -> Result<f64, SchurError> {
    let dec = schur_decompose(h, DEFAULT_TOL)?;
    Ok(dec
        .eigenvalues()
        .iter()
        .map(|l| l.re)
        .fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolvabilityKind {
    /// No bounded-by-one interpolant exists.
    None,
    /// Exactly one interpolant: the terminated fraction.
    Unique(RationalFn),
    /// Infinitely many; the prefix of parameters is free data.
    Infinite(SchurParams),
}

#[derive(Debug, Clone)]
pub struct SolvabilityVerdict {
    pub kind: SolvabilityKind,
    pub hermitian_form_psd: bool,
    pub hermitian_form_pd: bool,
}

/// Interpolation verdict for the prefix c_0..c_m: builds the triangular
/// Toeplitz section, tests I - C*C for semidefiniteness and definiteness
/// (eigenvalue threshold 1e-12 of the identity trace), and cross-checks the
/// verdict against the parameter criterion.
pub fn solvability(c: &[Complex64]) -> Result<SolvabilityVerdict, SchurError> {
    if c.is_empty() {
        return Err(SchurError::EmptyPrefix);
    }
    let n = c.len();
    let cm = toeplitz_upper(c, n);
    let gram = ComplexMatrix::identity(n).sub(&cm.adjoint().mul(&cm));
    let min_eig = min_eigenvalue_hermitian(&gram)?;
    let margin = 1e-12 * n as f64;
    let hermitian_form_psd = min_eig >= -margin;
    let hermitian_form_pd = min_eig > margin;

    let kind = match schur_parameters(c, TOL_UNIT) {
        Ok(p) if p.terminated => SolvabilityKind::Unique(approximant(&p)),
        Ok(p) => SolvabilityKind::Infinite(p),
        Err(SchurError::NotSchurPrefix { .. }) | Err(SchurError::InconsistentBoundary { .. }) => {
            SolvabilityKind::None
        }
        Err(e) => return Err(e),
    };
    debug_assert_eq!(matches!(kind, SolvabilityKind::Infinite(_)), hermitian_form_pd);
    debug_assert_eq!(!matches!(kind, SolvabilityKind::None), hermitian_form_psd);
    Ok(SolvabilityVerdict { kind, hermitian_form_psd, hermitian_form_pd })
}

/// Schur-Cohn test: true iff every root of g lies in the open unit disk,
/// decided by positive definiteness of D*D - C*C built from the degree-sized
/// triangular Toeplitz sections of g and its reflected polynomial.
pub fn schur_cohn(g: &[Complex64]) -> Result<bool, SchurError> {
    let deg = g
        .iter()
        .rposition(|c| c.norm() > 0.0)
        .ok_or(SchurError::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(true);
    }
    let c = toeplitz_upper(&g[..deg], deg);
    let reflected: Vec<Complex64> = (0..deg).map(|t| g[deg - t].conj()).collect();
    let d = toeplitz_upper(&reflected, deg);
    let h = d.adjoint().mul(&d).sub(&c.adjoint().mul(&c));
    let trace: f64 = h.diag().iter().map(|z| z.re).sum();
    let min_eig = min_eigenvalue_hermitian(&h)?;
    Ok(min_eig > 1e-12 * trace.abs().max(1.0))
}
