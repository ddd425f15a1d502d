//! Singular value decomposition by one-sided Jacobi: cyclic sweeps of complex
//! plane rotations orthogonalizing column pairs.

use super::{AlgebraError, ComplexMatrix};
use num_complex::Complex64;

const GRAM_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone)]
pub struct Svd {
    /// Unitary, square of size `rows`.
    pub u: ComplexMatrix,
    /// Non-increasing singular values, length `min(rows, cols)`.
    pub sigma: Vec<f64>,
    /// Unitary, square of size `cols`.
    pub v: ComplexMatrix,
}

impl Svd {
    /// Rebuilds U diag(sigma) V* for verification.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let m = self.u.rows();
        let n = self.v.rows();
        let mut s = ComplexMatrix::zeros(m, n);
        for (k, &sv) in self.sigma.iter().enumerate() {
            s[(k, k)] = Complex64::new(sv, 0.0);
        }
        self.u.mul(&s).mul(&self.v.adjoint())
    }
}

fn col_dot(g: &ComplexMatrix, p: usize, q: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..g.rows() {
        acc += g[(i, p)].conj() * g[(i, q)];
    }
    acc
}

fn col_norm_sq(g: &ComplexMatrix, p: usize) -> f64 {
    (0..g.rows()).map(|i| g[(i, p)].norm_sqr()).sum()
}

/// One Jacobi rotation on columns p, q of G and V; returns the rotated pair
/// off-diagonal magnitude before the rotation.
fn rotate(g: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, gamma: Complex64) {
    let alpha = col_norm_sq(g, p);
    let beta = col_norm_sq(g, q);
    let ga = gamma.norm();
    // Phase removal then a real Jacobi rotation on the 2x2 Gram block.
    let phase = gamma / ga;
    let tau = (beta - alpha) / (2.0 * ga);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    let e = phase.conj(); // e^{-i arg gamma}
    for i in 0..g.rows() {
        let a = g[(i, p)];
        let b = g[(i, q)] * e;
        g[(i, p)] = c * a - s * b;
        g[(i, q)] = s * a + c * b;
    }
    for i in 0..v.rows() {
        let a = v[(i, p)];
        let b = v[(i, q)] * e;
        v[(i, p)] = c * a - s * b;
        v[(i, q)] = s * a + c * b;
    }
}

/// Completes the nonzero left singular vectors to a unitary basis by
/// two-pass Gram-Schmidt over the standard basis.
fn complete_unitary(cols: &mut Vec<Vec<Complex64>>, m: usize) {
    for threshold in [0.1, 1e-7] {
        let mut e = 0usize;
        while cols.len() < m && e < m {
            let mut cand: Vec<Complex64> = (0..m)
                .map(|i| Complex64::new(if i == e { 1.0 } else { 0.0 }, 0.0))
                .collect();
            for _ in 0..2 {
                for c in cols.iter() {
                    let dot: Complex64 = c.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                    for (ci, xi) in c.iter().zip(cand.iter_mut()) {
                        *xi -= dot * ci;
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > threshold {
                for xi in cand.iter_mut() {
                    *xi /= norm;
                }
                cols.push(cand);
            }
            e += 1;
        }
        if cols.len() == m {
            break;
        }
    }
}

/// Singular value decomposition. `sigma[k]^2` are the eigenvalues of A*A in
/// non-increasing order.
pub fn svd(a: &ComplexMatrix, tol: f64) -> Result<Svd, AlgebraError> {
    assert!(tol > 0.0, "tolerance must be positive");
    if a.rows() < a.cols() {
        // Work on the adjoint and swap the factors.
        let sw = svd(&a.adjoint(), tol)?;
        return Ok(Svd { u: sw.v, sigma: sw.sigma, v: sw.u });
    }
    let m = a.rows();
    let n = a.cols();
    if n == 0 {
        return Ok(Svd { u: ComplexMatrix::identity(m), sigma: vec![], v: ComplexMatrix::identity(0) });
    }
    let mut g = a.clone();
    let mut v = ComplexMatrix::identity(n);
    // Columns this far below the matrix scale are rounding noise; rotating
    // them would never converge and they land below the rank cutoff anyway.
    let noise_sq = (1e-15 * a.frobenius_norm()).powi(2);
    // Relative per-pair criterion keeps the small singular directions as
    // accurately orthogonal as the dominant ones.
    let pair_small = |g: &ComplexMatrix, p: usize, q: usize| -> (Complex64, bool) {
        let (np, nq) = (col_norm_sq(g, p), col_norm_sq(g, q));
        if np <= noise_sq || nq <= noise_sq {
            return (Complex64::new(0.0, 0.0), true);
        }
        let gamma = col_dot(g, p, q);
        (gamma, gamma.norm_sqr() <= GRAM_TOL * GRAM_TOL * np * nq)
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (gamma, small) = pair_small(&g, p, q);
                if small {
                    continue;
                }
                rotate(&mut g, &mut v, p, q, gamma);
                rotated = true;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        // One last verification pass with a relaxed margin.
        let ok = (0..n).all(|p| {
            (p + 1..n).all(|q| {
                let (np, nq) = (col_norm_sq(&g, p), col_norm_sq(&g, q));
                if np <= noise_sq || nq <= noise_sq {
                    return true;
                }
                let gamma = col_dot(&g, p, q);
                gamma.norm_sqr() <= 100.0 * GRAM_TOL * GRAM_TOL * np * nq
            })
        });
        if !ok {
            return Err(AlgebraError::NonConvergence);
        }
    }

    // Column norms are the singular values; sort descending.
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| col_norm_sq(&g, j).sqrt()).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v_sorted = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let rank_tol = sigma_max * 1e-14;
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for (k, &j) in order.iter().enumerate() {
        if sigma[k] > rank_tol && sigma[k] > 0.0 {
            u_cols.push((0..m).map(|i| g[(i, j)] / sigma[k]).collect());
        }
    }
    complete_unitary(&mut u_cols, m);
    let u = ComplexMatrix::from_fn(m, m, |i, j| u_cols[j][i]);

    // Zero out singular values that are numerically rank-deficient noise.
    let sigma = sigma
        .into_iter()
        .map(|s| if s <= rank_tol { 0.0 } else { s })
        .collect();
    Ok(Svd { u, sigma, v: v_sorted })
}
