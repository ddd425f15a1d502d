//! Majorization order, doubly-stochastic matrices and their decompositions
//! into permutation matrices, the transfer construction from a majorization
//! relation, ortho-stochastic witnesses, Schur-convexity probing, spectra
//! with prescribed diagonals, determinant bounds, and the eigenvalue /
//! singular-value inequalities.

use crate::algebra::{schur_decompose, svd, AlgebraError, ComplexMatrix, DEFAULT_TOL};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

pub const DS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajorizationError {
    #[error("vectors must have equal length")]
    LengthMismatch,
    #[error("support graph has no perfect matching; input is not doubly stochastic within tolerance")]
    NoPerfectMatching,
    #[error("majorization precondition fails")]
    NotMajorized,
    #[error("ortho-stochastic search supports sizes 2 and 3 only, got {0}")]
    UnsupportedSize(usize),
    #[error("function is not symmetric under coordinate permutations")]
    NotSymmetric,
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,
    #[error("matrix is not positive semidefinite within tolerance")]
    NotPSD,
    #[error("matrix is not doubly stochastic within tolerance")]
    NotDoublyStochastic,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Square nonnegative matrix with unit row and column sums (within `tol`).
#[derive(Debug, Clone)]
pub struct DoublyStochastic {
    m: Vec<Vec<f64>>,
    tol: f64,
}

impl DoublyStochastic {
    pub fn new(m: Vec<Vec<f64>>, tol: f64) -> Result<Self, MajorizationError> {
        let n = m.len();
        if m.iter().any(|row| row.len() != n) {
            return Err(MajorizationError::LengthMismatch);
        }
        let ok_entries = m.iter().flatten().all(|&e| e >= -tol && e.is_finite());
        let ok_rows = m.iter().all(|row| (row.iter().sum::<f64>() - 1.0).abs() <= tol);
        let ok_cols = (0..n).all(|j| ((0..n).map(|i| m[i][j]).sum::<f64>() - 1.0).abs() <= tol);
        if !(ok_entries && ok_rows && ok_cols) {
            return Err(MajorizationError::NotDoublyStochastic);
        }
        Ok(DoublyStochastic { m, tol })
    }

    pub fn identity(n: usize) -> Self {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        DoublyStochastic { m, tol: DS_TOL }
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.m
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// x majorizes y: descending partial sums of y never exceed those of x and
/// the totals agree within 1e-12.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool, MajorizationError> {
    majorizes_tol(x, y, 1e-12)
}

/// Majorization with a caller-chosen slack on the partial sums, for data
/// that went through floating computations.
pub fn majorizes_tol(x: &[f64], y: &[f64], tol: f64) -> Result<bool, MajorizationError> {
    if x.len() != y.len() {
        return Err(MajorizationError::LengthMismatch);
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(|a, b| b.total_cmp(a));
    ys.sort_by(|a, b| b.total_cmp(a));
    let mut px = 0.0;
    let mut py = 0.0;
    for k in 0..xs.len() {
        px += xs[k];
        py += ys[k];
        if py > px + tol {
            return Ok(false);
        }
    }
    Ok((px - py).abs() <= tol)
}

/// One convex-combination term of a Birkhoff decomposition: the permutation
/// maps column j to row perm[j].
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffTerm<T> {
    pub lambda: T,
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BirkhoffDecomposition<T> {
    pub terms: Vec<BirkhoffTerm<T>>,
}

impl BirkhoffDecomposition<f64> {
    /// Rebuilds sum lambda_pi P_pi.
    pub fn reconstruct(&self, n: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; n]; n];
        for t in &self.terms {
            for (j, &i) in t.perm.iter().enumerate() {
                m[i][j] += t.lambda;
            }
        }
        m
    }
}

/// Augmenting-path bipartite matching on an explicit adjacency list.
fn perfect_matching(adj: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    // match_col[j] = row matched to column j
    let mut match_col = vec![usize::MAX; n];
    fn augment(r: usize, adj: &[Vec<usize>], seen: &mut [bool], match_col: &mut [usize]) -> bool {
        for &c in &adj[r] {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if match_col[c] == usize::MAX || augment(match_col[c], adj, seen, match_col) {
                match_col[c] = r;
                return true;
            }
        }
        false
    }
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(r, adj, &mut seen, &mut match_col) {
            return None;
        }
    }
    // Convert to perm[col] = row
    Some(match_col)
}

/// Generic Birkhoff loop over any ordered field-ish scalar.
fn birkhoff_impl<T>(
    mut m: Vec<Vec<T>>,
    is_pos: impl Fn(&T) -> bool,
) -> Result<Vec<BirkhoffTerm<T>>, MajorizationError>
where
    T: Clone + PartialOrd + Zero + std::ops::Sub<Output = T>,
{
    let n = m.len();
    let mut terms = Vec::new();
    if n == 0 {
        return Ok(terms);
    }
    loop {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| is_pos(&m[i][j])).collect())
            .collect();
        if adj.iter().all(|r| r.is_empty()) {
            break;
        }
        let match_col = perfect_matching(&adj, n).ok_or(MajorizationError::NoPerfectMatching)?;
        // perm[j] = row for column j; lambda = min matched entry
        let mut lambda: Option<T> = None;
        for (j, &i) in match_col.iter().enumerate() {
            let e = m[i][j].clone();
            lambda = Some(match lambda {
                None => e,
                Some(cur) => {
                    if e < cur {
                        e
                    } else {
                        cur
                    }
                }
            });
        }
        let lambda = lambda.unwrap();
        for (j, &i) in match_col.iter().enumerate() {
            m[i][j] = m[i][j].clone() - lambda.clone();
        }
        terms.push(BirkhoffTerm { lambda, perm: match_col });
    }
    Ok(terms)
}

/// Decomposition into a convex combination of permutation matrices by
/// repeated perfect matching on the positive support; the minimum matched
/// entry is subtracted so the support shrinks every round.
pub fn birkhoff(m: &DoublyStochastic) -> Result<BirkhoffDecomposition<f64>, MajorizationError> {
    let tol = m.tol().max(DS_TOL);
    let terms = birkhoff_impl(m.rows().to_vec(), |e| *e > tol)?;
    Ok(BirkhoffDecomposition { terms })
}

/// Exact-rational Birkhoff decomposition: support is entries strictly above
/// zero and the reconstruction is exact.
pub fn birkhoff_exact(
    m: &[Vec<BigRational>],
) -> Result<BirkhoffDecomposition<BigRational>, MajorizationError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(MajorizationError::LengthMismatch);
    }
    let terms = birkhoff_impl(m.to_vec(), |e| *e > BigRational::zero())?;
    Ok(BirkhoffDecomposition { terms })
}

/// Builds a doubly stochastic M with M x = y from a majorization y < x,
/// using at most n - 1 T-transforms (convex combinations of the identity
/// and a transposition).
pub fn hlp_transfer(x: &[f64], y: &[f64]) -> Result<DoublyStochastic, MajorizationError> {
    if x.len() != y.len() {
        return Err(MajorizationError::LengthMismatch);
    }
    if !majorizes(x, y)? {
        return Err(MajorizationError::NotMajorized);
    }
    let n = x.len();

    // Work on descending rearrangements; undo the sort at the end.
    let mut xi: Vec<usize> = (0..n).collect();
    xi.sort_by(|&a, &b| x[b].total_cmp(&x[a]));
    let mut yi: Vec<usize> = (0..n).collect();
    yi.sort_by(|&a, &b| y[b].total_cmp(&y[a]));
    let mut xs: Vec<f64> = xi.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = yi.iter().map(|&i| y[i]).collect();

    // m_sorted * xs accumulates toward ys through T-transforms.
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let apply_t = |m: &mut Vec<Vec<f64>>, j: usize, k: usize, t: f64| {
        // Rows j, k replaced by convex mixes: a T-transform from the left.
        for c in 0..m[0].len() {
            let a = m[j][c];
            let b = m[k][c];
            m[j][c] = t * a + (1.0 - t) * b;
            m[k][c] = (1.0 - t) * a + t * b;
        }
    };

    for _ in 0..n {
        // Locate the first mismatch pair: xs_j > ys_j and a later k with
        // xs_k < ys_k.
        let j = match (0..n).find(|&i| xs[i] - ys[i] > 1e-13) {
            Some(j) => j,
            None => break,
        };
        let k = match (j + 1..n).find(|&i| ys[i] - xs[i] > 1e-13) {
            Some(k) => k,
            None => break,
        };
        let delta = (xs[j] - ys[j]).min(ys[k] - xs[k]);
        let gap = xs[j] - xs[k];
        if gap <= 0.0 {
            break;
        }
        let t = 1.0 - delta / gap;
        let (aj, ak) = (xs[j], xs[k]);
        xs[j] = t * aj + (1.0 - t) * ak;
        xs[k] = (1.0 - t) * aj + t * ak;
        apply_t(&mut m, j, k, t);
    }

    // Undo the sorting: want M_orig with M_orig x = y, so conjugate by the
    // two permutations. m maps sorted-x to sorted-y.
    let mut full = vec![vec![0.0; n]; n];
    for r in 0..n {
        for c in 0..n {
            full[yi[r]][xi[c]] = m[r][c];
        }
    }
    DoublyStochastic::new(full, 1e-9)
}

/// Exhaustive search for an orthogonal sign assignment u_jk = +-sqrt(m_jk);
/// first-row signs are fixed positive (column sign gauge). Sizes 2 and 3.
pub fn ortho_stochastic_witness(
    m: &DoublyStochastic,
) -> Result<Option<Vec<Vec<f64>>>, MajorizationError> {
    let n = m.n();
    if n != 2 && n != 3 {
        return Err(MajorizationError::UnsupportedSize(n));
    }
    let root: Vec<Vec<f64>> = m
        .rows()
        .iter()
        .map(|row| row.iter().map(|&e| e.max(0.0).sqrt()).collect())
        .collect();
    let free_rows = n - 1;
    let combos = 1usize << (free_rows * n);
    for code in 0..combos {
        let mut u = root.clone();
        let mut c = code;
        for i in 1..n {
            for j in 0..n {
                if c & 1 == 1 {
                    u[i][j] = -u[i][j];
                }
                c >>= 1;
            }
        }
        let mut ok = true;
        'rows: for a in 0..n {
            for b in a + 1..n {
                let dot: f64 = (0..n).map(|j| u[a][j] * u[b][j]).sum();
                if dot.abs() > 1e-10 {
                    ok = false;
                    break 'rows;
                }
            }
        }
        if ok {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexVerdict {
    Consistent,
    Counterexample(Vec<f64>),
}

/// Samples the classical differential condition for Schur convexity: at
/// points with x_1 > x_2 the first two partial derivatives must satisfy
/// d1 - d2 >= 0. Symmetry of phi is verified on sampled permutations first.
///
/// `gradient` may be analytic; otherwise central differences with step 1e-6
/// are used.
pub fn schur_convex_test(
    phi: &dyn Fn(&[f64]) -> f64,
    gradient: Option<&dyn Fn(&[f64]) -> Vec<f64>>,
    dim: usize,
    samples: usize,
    domain: (f64, f64),
    seed: u64,
) -> Result<ConvexVerdict, MajorizationError> {
    use rand::Rng;
    assert!(dim >= 2);
    let mut rng = crate::par::trial_rng(seed, 0);
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
        (0..dim).map(|_| rng.gen_range(domain.0..domain.1)).collect()
    };

    // Symmetry check on sampled transpositions.
    for _ in 0..32.min(samples) {
        let x = draw(&mut rng);
        let a = rng.gen_range(0..dim);
        let b = rng.gen_range(0..dim);
        let mut xp = x.clone();
        xp.swap(a, b);
        if (phi(&x) - phi(&xp)).abs() > 1e-9 * phi(&x).abs().max(1.0) {
            return Err(MajorizationError::NotSymmetric);
        }
    }

    let grad_at = |x: &[f64]| -> Vec<f64> {
        match gradient {
            Some(g) => g(x),
            None => {
                let h = 1e-6;
                (0..dim)
                    .map(|i| {
                        let mut xp = x.to_vec();
                        let mut xm = x.to_vec();
                        xp[i] += h;
                        xm[i] -= h;
                        (phi(&xp) - phi(&xm)) / (2.0 * h)
                    })
                    .collect()
            }
        }
    };

    for _ in 0..samples {
        let mut x = draw(&mut rng);
        if x[0] < x[1] {
            x.swap(0, 1);
        }
        if x[0] - x[1] < 1e-9 {
            x[0] += 1e-3;
        }
        let g = grad_at(&x);
        if g[0] - g[1] < -1e-8 {
            return Ok(ConvexVerdict::Counterexample(x));
        }
    }
    Ok(ConvexVerdict::Consistent)
}

/// Builds a real symmetric matrix with the given spectrum and diagonal
/// (spectrum majorizes diagonal), by a chain of plane rotations each solved
/// in closed form to pin one diagonal entry.
pub fn horn_construct(spectrum: &[f64], diagonal: &[f64]) -> Result<ComplexMatrix, MajorizationError> {
    if spectrum.len() != diagonal.len() {
        return Err(MajorizationError::LengthMismatch);
    }
    if !majorizes(spectrum, diagonal)? {
        return Err(MajorizationError::NotMajorized);
    }
    let n = spectrum.len();
    let mut d: Vec<f64> = diagonal.to_vec();
    d.sort_by(|a, b| b.total_cmp(a));

    // Active slots carry the remaining "virtual spectrum" on the trailing
    // diagonal; each step rotates two of them so slot `step` lands on d.
    let mut lam: Vec<f64> = spectrum.to_vec();
    lam.sort_by(|a, b| b.total_cmp(a));
    let mut h = ComplexMatrix::zeros(n, n);
    let mut slot_val: Vec<f64> = lam.clone();
    for (i, &v) in slot_val.iter().enumerate() {
        h[(i, i)] = Complex64::new(v, 0.0);
    }

    for step in 0..n {
        let target = d[step];
        let active: Vec<usize> = (step..n).collect();
        if active.len() == 1 {
            break;
        }
        // Choose a pair straddling the target, ties to the lowest index.
        let mut exact = None;
        for &i in &active {
            if (slot_val[i] - target).abs() <= 1e-13 {
                exact = Some(i);
                break;
            }
        }
        if let Some(i) = exact {
            // Swap into position by a symmetric permutation.
            if i != step {
                swap_sym(&mut h, i, step, n);
                slot_val.swap(i, step);
            }
            continue;
        }
        let hi = *active
            .iter()
            .filter(|&&i| slot_val[i] > target)
            .min_by(|&&a, &&b| slot_val[a].total_cmp(&slot_val[b]))
            .ok_or(MajorizationError::NotMajorized)?;
        let lo = *active
            .iter()
            .filter(|&&i| slot_val[i] < target)
            .max_by(|&&a, &&b| slot_val[a].total_cmp(&slot_val[b]))
            .ok_or(MajorizationError::NotMajorized)?;
        let (a, b) = (slot_val[hi], slot_val[lo]);
        // Rotation with cos^2 = (target - b)/(a - b) sends slot `hi` to the
        // target and its partner to a + b - target; the sign keeps the new
        // off-diagonal coupling nonnegative.
        let c2 = ((target - b) / (a - b)).clamp(0.0, 1.0);
        let c = c2.sqrt();
        let s = -(1.0 - c2).sqrt();
        rotate_sym(&mut h, hi, lo, c, s, n);
        slot_val[hi] = target;
        slot_val[lo] = a + b - target;
        if hi != step {
            swap_sym(&mut h, hi, step, n);
            slot_val.swap(hi, step);
        }
    }
    Ok(h)
}

/// H <- G^T H G with G the rotation [[c, -s], [s, c]] in the (p, q) plane.
fn rotate_sym(h: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, n: usize) {
    for j in 0..n {
        let a = h[(p, j)];
        let b = h[(q, j)];
        h[(p, j)] = c * a + s * b;
        h[(q, j)] = -s * a + c * b;
    }
    for i in 0..n {
        let a = h[(i, p)];
        let b = h[(i, q)];
        h[(i, p)] = c * a + s * b;
        h[(i, q)] = -s * a + c * b;
    }
}

fn swap_sym(h: &mut ComplexMatrix, p: usize, q: usize, n: usize) {
    for j in 0..n {
        let t = h[(p, j)];
        h[(p, j)] = h[(q, j)];
        h[(q, j)] = t;
    }
    for i in 0..n {
        let t = h[(i, p)];
        h[(i, p)] = h[(i, q)];
        h[(i, q)] = t;
    }
}

/// Weyl comparison of eigenvalue moduli against singular values.
#[derive(Debug, Clone)]
pub struct WeylReport {
    /// |lambda_1| >= |lambda_2| >= ...
    pub eigen_moduli: Vec<f64>,
    /// s_1 >= s_2 >= ...
    pub singulars: Vec<f64>,
    /// prod_{l<=k} s_l - prod_{l<=k} |lambda_l| for k = 1..n.
    pub partial_product_gaps: Vec<f64>,
    /// p -> (sum |lambda|^p, sum s^p).
    pub power_sums: BTreeMap<String, (f64, f64)>,
}

pub fn weyl_report(a: &ComplexMatrix, powers: &[f64]) -> Result<WeylReport, MajorizationError> {
    let dec = schur_decompose(a, DEFAULT_TOL)?;
    let mut eigen_moduli: Vec<f64> = dec.eigenvalues().iter().map(|l| l.norm()).collect();
    eigen_moduli.sort_by(|x, y| y.total_cmp(x));
    let singulars = svd(a, DEFAULT_TOL)?.sigma;

    let mut gaps = Vec::with_capacity(eigen_moduli.len());
    let mut pe = 1.0;
    let mut ps = 1.0;
    for k in 0..eigen_moduli.len() {
        pe *= eigen_moduli[k];
        ps *= singulars[k];
        gaps.push(ps - pe);
    }
    let mut power_sums = BTreeMap::new();
    for &p in powers {
        let le: f64 = eigen_moduli.iter().map(|&x| x.powf(p)).sum();
        let ls: f64 = singulars.iter().map(|&x| x.powf(p)).sum();
        power_sums.insert(format!("{p}"), (le, ls));
    }
    Ok(WeylReport { eigen_moduli, singulars, partial_product_gaps: gaps, power_sums })
}

/// Hadamard determinant check for a Hermitian PSD matrix: returns
/// (det, product of diagonal entries) with det <= product guaranteed.
pub fn hadamard_det_check(h: &ComplexMatrix) -> Result<(f64, f64), MajorizationError> {
    if !h.is_hermitian(1e-12 * h.max_abs().max(1.0)) {
        return Err(MajorizationError::NotHermitian);
    }
    let trace: f64 = h.diag().iter().map(|z| z.re).sum();
    if !h.is_psd(1e-10 * trace.abs().max(1.0))? {
        return Err(MajorizationError::NotPSD);
    }
    let det = h.det().re;
    let diag_product = h.diag().iter().map(|z| z.re).product();
    Ok((det, diag_product))
}

/// General-matrix determinant bound: (|det A|, (max |a_jk|)^n n^{n/2}).
pub fn hadamard_det_bound(a: &ComplexMatrix) -> (f64, f64) {
    let n = a.rows() as f64;
    let det = a.det().norm();
    let bound = a.max_abs().powi(a.rows() as i32) * n.powf(n / 2.0);
    (det, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn majorization_basics() {
        assert!(majorizes(&[3.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap());
        assert!(majorizes(&[2.0, 1.0, 0.0], &[2.0, 1.0, 0.0]).unwrap());
        assert!(!majorizes(&[2.0, 1.0, 0.0], &[2.0, 2.0, -1.0]).unwrap());
        assert!(majorizes(&[1.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn birkhoff_identity_single_term() {
        let d = birkhoff(&DoublyStochastic::identity(3)).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!((d.terms[0].lambda - 1.0).abs() < 1e-15);
        assert_eq!(d.terms[0].perm, vec![0, 1, 2]);
    }

    #[test]
    fn birkhoff_half_half() {
        let m = DoublyStochastic::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]], DS_TOL).unwrap();
        let d = birkhoff(&m).unwrap();
        assert_eq!(d.terms.len(), 2);
        let recon = d.reconstruct(2);
        for i in 0..2 {
            for j in 0..2 {
                assert!((recon[i][j] - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn birkhoff_exact_remark_matrix() {
        // (1/6) [[0,3,3],[3,1,2],[3,2,1]]: doubly but not ortho-stochastic.
        let m: Vec<Vec<BigRational>> = vec![
            vec![rat(0), ratio(3, 6), ratio(3, 6)],
            vec![ratio(3, 6), ratio(1, 6), ratio(2, 6)],
            vec![ratio(3, 6), ratio(2, 6), ratio(1, 6)],
        ];
        let d = birkhoff_exact(&m).unwrap();
        assert!(d.terms.len() <= 5, "terms {}", d.terms.len());
        // Exact reconstruction
        let mut recon = vec![vec![BigRational::zero(); 3]; 3];
        for t in &d.terms {
            for (j, &i) in t.perm.iter().enumerate() {
                recon[i][j] += t.lambda.clone();
            }
        }
        assert_eq!(recon, m);
    }

    #[test]
    fn no_matching_for_bad_input() {
        // Zero row kills the matching.
        let m = DoublyStochastic { m: vec![vec![0.0, 0.0], vec![1.0, 1.0]], tol: DS_TOL };
        assert!(matches!(birkhoff(&m), Err(MajorizationError::NoPerfectMatching)));
    }

    #[test]
    fn transfer_reproduces_examples() {
        // Uniform average
        let m = hlp_transfer(&[3.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).unwrap();
        let out = m.apply(&[3.0, 0.0, 0.0]);
        for v in out {
            assert!((v - 1.0).abs() < 1e-10);
        }
        // One T-transform with weight 2/3
        let m = hlp_transfer(&[3.0, 0.0, 0.0], &[2.0, 1.0, 0.0]).unwrap();
        let out = m.apply(&[3.0, 0.0, 0.0]);
        assert!((out[0] - 2.0).abs() < 1e-10);
        assert!((out[1] - 1.0).abs() < 1e-10);
        assert!(out[2].abs() < 1e-10);
        // Identity when equal
        let m = hlp_transfer(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert!((m.entry(0, 0) - 1.0).abs() < 1e-12 && (m.entry(1, 1) - 1.0).abs() < 1e-12);
        assert!(matches!(
            hlp_transfer(&[1.0, 1.0], &[2.0, 0.0]),
            Err(MajorizationError::NotMajorized)
        ));
    }

    #[test]
    fn transfer_unsorted_inputs() {
        let x = [0.0, 3.0, -1.0];
        let y = [1.0, 0.5, 0.5];
        assert!(majorizes(&x, &y).unwrap());
        let m = hlp_transfer(&x, &y).unwrap();
        let out = m.apply(&x);
        for (o, e) in out.iter().zip(&y) {
            assert!((o - e).abs() < 1e-10, "{out:?}");
        }
    }

    #[test]
    fn ortho_witness_rotation_and_permutation() {
        let th = 0.6f64;
        let (c2, s2) = (th.cos().powi(2), th.sin().powi(2));
        let m = DoublyStochastic::new(vec![vec![c2, s2], vec![s2, c2]], 1e-12).unwrap();
        let u = ortho_stochastic_witness(&m).unwrap().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((u[i][j] * u[i][j] - m.entry(i, j)).abs() < 1e-12);
            }
        }
        // Permutation is its own witness
        let p = DoublyStochastic::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], 1e-12).unwrap();
        assert!(ortho_stochastic_witness(&p).unwrap().is_some());
        assert!(matches!(
            ortho_stochastic_witness(&DoublyStochastic::identity(4)),
            Err(MajorizationError::UnsupportedSize(4))
        ));
    }

    #[test]
    fn remark_matrix_has_no_witness() {
        let m = DoublyStochastic::new(
            vec![
                vec![0.0, 0.5, 0.5],
                vec![0.5, 1.0 / 6.0, 2.0 / 6.0],
                vec![0.5, 2.0 / 6.0, 1.0 / 6.0],
            ],
            1e-12,
        )
        .unwrap();
        assert!(ortho_stochastic_witness(&m).unwrap().is_none());
    }

    #[test]
    fn convexity_probe() {
        let sumsq = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let grad = |x: &[f64]| x.iter().map(|v| 2.0 * v).collect::<Vec<_>>();
        let v = schur_convex_test(&sumsq, Some(&grad), 4, 500, (-3.0, 3.0), 7).unwrap();
        assert_eq!(v, ConvexVerdict::Consistent);
        let neg = |x: &[f64]| -sumsq(x);
        let v = schur_convex_test(&neg, None, 4, 500, (-3.0, 3.0), 7).unwrap();
        assert!(matches!(v, ConvexVerdict::Counterexample(_)));
        let asym = |x: &[f64]| x[0];
        assert!(matches!(
            schur_convex_test(&asym, None, 3, 100, (-1.0, 1.0), 7),
            Err(MajorizationError::NotSymmetric)
        ));
    }

    #[test]
    fn horn_small_cases() {
        // spectrum = diagonal: diagonal matrix
        let h = horn_construct(&[2.0, 1.0], &[2.0, 1.0]).unwrap();
        assert!((h[(0, 0)].re - 2.0).abs() < 1e-12 && h[(0, 1)].norm() < 1e-12);
        // Rank-one projector
        let h = horn_construct(&[1.0, 0.0], &[0.5, 0.5]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((h[(i, j)].re - 0.5).abs() < 1e-10, "{h:?}");
            }
        }
        // Eigenvalues recomputed
        let h = horn_construct(&[2.0, 1.0, 0.0], &[1.0, 1.0, 1.0]).unwrap();
        for i in 0..3 {
            assert!((h[(i, i)].re - 1.0).abs() < 1e-10);
        }
        let mut eig: Vec<f64> = h.eigenvalues().unwrap().iter().map(|l| l.re).collect();
        eig.sort_by(|a, b| b.total_cmp(a));
        for (e, want) in eig.iter().zip(&[2.0, 1.0, 0.0]) {
            assert!((e - want).abs() < 1e-9);
        }
    }

    #[test]
    fn weyl_on_normal_and_nilpotent() {
        let a = ComplexMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
        let r = weyl_report(&a, &[1.0]).unwrap();
        assert!((r.eigen_moduli[0] - 2.0).abs() < 1e-12);
        assert!(r.partial_product_gaps.iter().all(|g| g.abs() < 1e-10));

        let n = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let r = weyl_report(&n, &[0.5, 1.0, 2.0]).unwrap();
        assert!(r.eigen_moduli.iter().all(|x| *x < 1e-12));
        assert!((r.singulars[0] - 1.0).abs() < 1e-12);
        for (_, (le, ls)) in &r.power_sums {
            assert!(le <= &(ls + 1e-9));
        }
    }

    #[test]
    fn hadamard_determinant_cases() {
        let id = ComplexMatrix::identity(3);
        let (det, prod) = hadamard_det_check(&id).unwrap();
        assert!((det - 1.0).abs() < 1e-12 && (prod - 1.0).abs() < 1e-12);

        let h = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let (det, prod) = hadamard_det_check(&h).unwrap();
        assert!((det - 3.0).abs() < 1e-12 && (prod - 4.0).abs() < 1e-12);
        assert!(det <= prod + 1e-10);

        let walsh = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let (det, bound) = hadamard_det_bound(&walsh);
        assert!((det - 2.0).abs() < 1e-12);
        assert!((bound - 2.0).abs() < 1e-12);

        let notpsd = ComplexMatrix::from_real_rows(&[vec![1.0, 3.0], vec![3.0, 1.0]]).unwrap();
        assert!(matches!(hadamard_det_check(&notpsd), Err(MajorizationError::NotPSD)));
    }
}
