//! The Schur algorithm on the unit disk: parameter extraction from Taylor
//! data, continued-fraction approximants, interpolation verdicts, the
//! Schur-Cohn root-location test, j-inner resolvent matrices, and orthogonal
//! polynomials on the circle with the reflection-coefficient correspondence.

mod interpolation;
mod opuc;
mod rational;
mod resolvent;

pub use interpolation::{schur_cohn, solvability, toeplitz_upper, SolvabilityKind, SolvabilityVerdict};
pub use opuc::{schur_from_measure, schur_from_moments, szego_polys, DiscreteMeasure, OpucData};
pub use rational::{approximant, finite_fraction_check, FiniteFractionReport, RationalFn};
pub use resolvent::{resolvent_exact, resolvent_jform_exact, resolvent_matrix, ResolventMatrix};

use crate::algebra::AlgebraError;
use num_complex::Complex64;
use thiserror::Error;

/// Default unit-modulus detection tolerance for parameter extraction.
pub const TOL_UNIT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchurError {
    #[error("Taylor prefix admits no bounded-by-one interpolant: |gamma_{index}| = {modulus} > 1")]
    NotSchurPrefix { index: usize, modulus: f64 },
    #[error("|gamma_{index}| = 1 but later coefficients contradict the forced continuation")]
    InconsistentBoundary { index: usize },
    #[error("resolvent construction needs strictly contractive parameters; |gamma_{index}| >= 1")]
    NonContractiveParameter { index: usize },
    #[error("the zero polynomial is not admissible")]
    ZeroPolynomial,
    #[error("numerator and denominator share a nonconstant factor")]
    NotCoprime,
    #[error("moment Gram matrix is singular: duplicate or near-duplicate atoms")]
    RankDeficiency,
    #[error("Cayley transform degenerates: w(0) + 1 vanishes")]
    DegenerateCayley,
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("prefix must be nonempty")]
    EmptyPrefix,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Finite Taylor data c_0..c_m of a function on the disk.
pub type PowerSeriesPrefix = Vec<Complex64>;

/// The output of the Schur algorithm: strictly contractive parameters except
/// possibly a final unimodular entry when the function terminates.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurParams {
    pub gammas: Vec<Complex64>,
    pub terminated: bool,
}

impl SchurParams {
    pub fn contractive(gammas: Vec<Complex64>) -> Self {
        SchurParams { gammas, terminated: false }
    }

    /// Checks the defining modulus constraints within `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        if self.gammas.is_empty() {
            return false;
        }
        let last = self.gammas.len() - 1;
        self.gammas.iter().enumerate().all(|(k, g)| {
            if self.terminated && k == last {
                (g.norm() - 1.0).abs() <= tol
            } else {
                g.norm() < 1.0
            }
        })
    }
}

// ---- truncated power-series helpers (ascending coefficients) ----

pub(crate) fn series_mul(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai.norm_sqr() == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Reciprocal power series of `a` (a[0] != 0) to the given length.
pub(crate) fn series_inv(a: &[Complex64], len: usize) -> Vec<Complex64> {
    let a0 = a[0];
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    out[0] = Complex64::new(1.0, 0.0) / a0;
    for k in 1..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            let aj = a.get(j).copied().unwrap_or(Complex64::new(0.0, 0.0));
            acc += aj * out[k - j];
        }
        out[k] = -acc / a0;
    }
    out
}

pub(crate) fn series_div(num: &[Complex64], den: &[Complex64], len: usize) -> Vec<Complex64> {
    series_mul(num, &series_inv(den, len), len)
}

/// The Schur algorithm on a Taylor prefix: gamma_k is the constant term of
/// the k-th transform, computed by formal power-series division with the
/// working degree shrinking by one per step. A unimodular parameter (within
/// `tol_unit`) terminates the sequence; the remaining input coefficients are
/// then checked against the unique terminated continuation.
pub fn schur_parameters(c: &[Complex64], tol_unit: f64) -> Result<SchurParams, SchurError> {
    assert!(tol_unit > 0.0 && tol_unit <= 1e-6, "tol_unit must lie in (0, 1e-6]");
    if c.is_empty() {
        return Err(SchurError::EmptyPrefix);
    }
    let m = c.len() - 1;
    let mut s: Vec<Complex64> = c.to_vec();
    let mut gammas: Vec<Complex64> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let g = s[0];
        let modulus = g.norm();
        if modulus > 1.0 + tol_unit {
            return Err(SchurError::NotSchurPrefix { index: k, modulus });
        }
        if (modulus - 1.0).abs() <= tol_unit {
            gammas.push(g);
            let params = SchurParams { gammas, terminated: true };
            // The terminated fraction determines all later coefficients.
            let forced = approximant(&params).taylor(m + 1);
            let consistent = (0..=m).all(|j| (forced[j] - c[j]).norm() <= TOL_UNIT.max(10.0 * tol_unit));
            if !consistent {
                return Err(SchurError::InconsistentBoundary { index: k });
            }
            return Ok(params);
        }
        gammas.push(g);
        if k == m {
            break;
        }
        // s_{k+1} = (s - g) / (z (1 - conj(g) s)), one degree shorter.
        let len = m - k;
        let num: Vec<Complex64> = s[1..].to_vec();
        let mut den = vec![Complex64::new(0.0, 0.0); len];
        den[0] = Complex64::new(1.0, 0.0) - g.conj() * s[0];
        for (j, d) in den.iter_mut().enumerate().skip(1) {
            *d = -g.conj() * s[j];
        }
        s = series_div(&num, &den, len);
    }
    Ok(SchurParams { gammas, terminated: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_prefix() {
        let p = schur_parameters(&[c(0.5, 0.0)], TOL_UNIT).unwrap();
        assert_eq!(p.gammas, vec![c(0.5, 0.0)]);
        assert!(!p.terminated);
    }

    #[test]
    fn shift_terminates() {
        // (0, 1): the transform of z is identically 1.
        let p = schur_parameters(&[c(0.0, 0.0), c(1.0, 0.0)], TOL_UNIT).unwrap();
        assert_eq!(p.gammas, vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(p.terminated);
    }

    #[test]
    fn schwartz_violation_rejected() {
        let err = schur_parameters(&[c(0.0, 0.0), c(2.0, 0.0)], TOL_UNIT).unwrap_err();
        assert!(matches!(err, SchurError::NotSchurPrefix { index: 1, .. }));
    }

    #[test]
    fn boundary_consistency_enforced() {
        // s = z has forced continuation (0, 1, 0, ...); a nonzero c_2 breaks it.
        let ok = schur_parameters(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], TOL_UNIT).unwrap();
        assert!(ok.terminated && ok.gammas.len() == 2);
        let err = schur_parameters(&[c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)], TOL_UNIT).unwrap_err();
        assert!(matches!(err, SchurError::InconsistentBoundary { index: 1 }));
    }

    #[test]
    fn series_inverse_is_reciprocal() {
        let a = [c(2.0, 0.0), c(1.0, -0.5), c(0.25, 0.25), c(-0.7, 0.0)];
        let inv = series_inv(&a, 4);
        let prod = series_mul(&a, &inv, 4);
        assert!((prod[0] - c(1.0, 0.0)).norm() < 1e-14);
        for p in &prod[1..] {
            assert!(p.norm() < 1e-14);
        }
    }
}
