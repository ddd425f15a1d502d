//! Unitary triangularization T = U*AU by Hessenberg reduction followed by an
//! implicitly shifted QR iteration with Wilkinson shifts.

use super::{AlgebraError, ComplexMatrix};
use num_complex::Complex64;

/// Deflation threshold relative to the neighbouring diagonal magnitudes.
const DEFLATE: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct SchurDecomposition {
    /// Unitary factor with A = U T U*.
    pub u: ComplexMatrix,
    /// Upper triangular factor; its diagonal is the eigenvalue multiset.
    pub t: ComplexMatrix,
    pub tol_used: f64,
}

impl SchurDecomposition {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diag()
    }
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` sending `(f, g)` to
/// `(r, 0)` with real `c`.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g.norm_sqr() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if f.norm_sqr() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let fa = f.norm();
    let d = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = fa / d;
    let s = (f / fa) * g.conj() / d;
    (c, s)
}

/// Applies the rotation to rows `i, i+1`, columns `j0..`.
fn rot_rows(h: &mut ComplexMatrix, i: usize, c: f64, s: Complex64, j0: usize) {
    for j in j0..h.cols() {
        let a = h[(i, j)];
        let b = h[(i + 1, j)];
        h[(i, j)] = c * a + s * b;
        h[(i + 1, j)] = -s.conj() * a + c * b;
    }
}

/// Applies the adjoint rotation to columns `i, i+1`, rows `..r1`.
fn rot_cols(h: &mut ComplexMatrix, i: usize, c: f64, s: Complex64, r1: usize) {
    for r in 0..r1 {
        let a = h[(r, i)];
        let b = h[(r, i + 1)];
        h[(r, i)] = c * a + s.conj() * b;
        h[(r, i + 1)] = -s * a + c * b;
    }
}

fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal.
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm_x = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let sign = if v[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { v[0] / v[0].norm() };
        let alpha = -sign * norm_x;
        v[0] -= alpha;
        let vv = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;

        // H[k+1.., ..] -= beta v (v* H)
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + idx, j)];
            }
            dot *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let upd = vi * dot;
                h[(k + 1 + idx, j)] -= upd;
            }
        }
        // H[.., k+1..] -= beta (H v) v*
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += h[(i, k + 1 + idx)] * vi;
            }
            dot *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let upd = dot * vi.conj();
                h[(i, k + 1 + idx)] -= upd;
            }
        }
        // Q[.., k+1..] -= beta (Q v) v*
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                dot += q[(i, k + 1 + idx)] * vi;
            }
            dot *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let upd = dot * vi.conj();
                q[(i, k + 1 + idx)] -= upd;
            }
        }
        // Clean what the reflection provably zeroed.
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Unitary triangularization of a square matrix.
///
/// Eigenvalue ordering along the diagonal of T is unspecified; compare
/// spectra as multisets.
pub fn schur_decompose(a: &ComplexMatrix, tol: f64) -> Result<SchurDecomposition, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::NotSquare);
    }
    assert!(tol > 0.0, "tolerance must be positive");
    let n = a.rows();
    if n == 0 {
        return Ok(SchurDecomposition { u: a.clone(), t: a.clone(), tol_used: tol });
    }
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let (mut h, mut u) = hessenberg(a);

    let budget = 100 * n * n + 100;
    let mut steps = 0usize;
    let mut hi = n - 1;
    let mut stagnation = 0usize;
    'outer: loop {
        // Deflate converged subdiagonal entries.
        while hi > 0 {
            let thresh = (DEFLATE * (h[(hi - 1, hi - 1)].norm() + h[(hi, hi)].norm()))
                .max(1e-300)
                .max(DEFLATE * scale * 1e-2);
            if h[(hi, hi - 1)].norm() <= thresh {
                h[(hi, hi - 1)] = Complex64::new(0.0, 0.0);
                if hi == 1 {
                    break 'outer;
                }
                hi -= 1;
                stagnation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            break;
        }
        // Active block [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let thresh = (DEFLATE * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm()))
                .max(1e-300)
                .max(DEFLATE * scale * 1e-2);
            if h[(lo, lo - 1)].norm() <= thresh {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if steps >= budget {
            return Err(AlgebraError::NonConvergence);
        }
        steps += 1;
        stagnation += 1;

        let mu = if stagnation % 31 == 30 {
            // Exceptional shift to break symmetric stalls.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };

        // Implicit single-shift bulge chase on the window [lo, hi].
        let x = h[(lo, lo)] - mu;
        let y = h[(lo + 1, lo)];
        let (mut c, mut s) = givens(x, y);
        let mut k = lo;
        loop {
            rot_rows(&mut h, k, c, s, k.saturating_sub(1));
            if k > lo {
                // The rotation annihilated the bulge below the subdiagonal.
                h[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
            }
            rot_cols(&mut h, k, c, s, (k + 3).min(n));
            rot_cols(&mut u, k, c, s, n);
            if k + 2 > hi {
                break;
            }
            let f = h[(k + 1, k)];
            let g = h[(k + 2, k)];
            let (nc, ns) = givens(f, g);
            c = nc;
            s = ns;
            k += 1;
        }
    }

    // The iteration drives subdiagonals to zero; make T exactly triangular.
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(SchurDecomposition { u, t: h, tol_used: tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruct(d: &SchurDecomposition) -> ComplexMatrix {
        d.u.mul(&d.t).mul(&d.u.adjoint())
    }

    #[test]
    fn nilpotent_is_already_triangular() {
        let a = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d = schur_decompose(&a, DEFAULT_TOL).unwrap();
        assert!(d.t.sub(&a).frobenius_norm() < 1e-12);
        assert!(d.eigenvalues().iter().all(|l| l.norm() < 1e-12));
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 2.0)]);
        let d = schur_decompose(&a, DEFAULT_TOL).unwrap();
        let mut eig = d.eigenvalues();
        eig.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((eig[0] - c(0.0, 2.0)).norm() < 1e-12);
        assert!((eig[1] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(reconstruct(&d).sub(&a).frobenius_norm() < 1e-12);
    }

    #[test]
    fn rotation_block_has_pure_imaginary_spectrum() {
        // Characteristic polynomial l^2 + 1, roots +-i.
        let a = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d = schur_decompose(&a, DEFAULT_TOL).unwrap();
        let mut eig = d.eigenvalues();
        eig.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((eig[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((eig[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn random_reconstruction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 3, 5, 8, 13] {
            let a = ComplexMatrix::from_fn(n, n, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let d = schur_decompose(&a, DEFAULT_TOL).unwrap();
            let id = ComplexMatrix::identity(n);
            assert!(d.u.adjoint().mul(&d.u).sub(&id).frobenius_norm() < 1e-12 * (n as f64) + 1e-13);
            let rel = reconstruct(&d).sub(&a).frobenius_norm() / a.frobenius_norm();
            assert!(rel < 1e-12, "reconstruction error {rel} at n={n}");
        }
    }
}
