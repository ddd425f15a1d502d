//! Seeded random instance generators shared by the battery and the
//! acceptance suite.

use crate::algebra::{svd, ComplexMatrix, RealPoly, DEFAULT_TOL};
use crate::exact::{rat, ratio};
use crate::majorization::{DoublyStochastic, DS_TOL};
use crate::polya::MultiplierSeq;
use crate::psido::{DiffPoly, LaurentOp};
use crate::schur::DiscreteMeasure;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rand_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn rand_complex_in_disk(rng: &mut ChaCha8Rng, rmax: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.0..rmax), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn rand_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| rand_complex(rng, 1.0))
}

pub fn rand_real_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
}

/// Hermitian PSD as G* G.
pub fn rand_psd(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let gm = rand_matrix(rng, n, n);
    gm.adjoint().mul(&gm)
}

pub fn rand_real_symmetric(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Unitary factor of a random matrix.
pub fn rand_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    svd(&rand_matrix(rng, n, n), DEFAULT_TOL).expect("svd of random matrix").u
}

/// Normal matrix U diag U*.
pub fn rand_normal_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let u = rand_unitary(rng, n);
    let d = ComplexMatrix::diagonal(&(0..n).map(|_| rand_complex(rng, 1.0)).collect::<Vec<_>>());
    u.mul(&d).mul(&u.adjoint())
}

/// Convex combination of random permutation matrices: exactly doubly
/// stochastic up to rounding.
pub fn rand_doubly_stochastic(rng: &mut ChaCha8Rng, n: usize) -> DoublyStochastic {
    let terms = rng.gen_range(1..=2 * n);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut m = vec![vec![0.0; n]; n];
    let mut perm: Vec<usize> = (0..n).collect();
    for w in weights {
        perm.shuffle(rng);
        for (j, &i) in perm.iter().enumerate() {
            m[i][j] += w;
        }
    }
    DoublyStochastic::new(m, DS_TOL.max(1e-12)).expect("convex combination is doubly stochastic")
}

pub fn rand_contractive(rng: &mut ChaCha8Rng, len: usize, rmax: f64) -> Vec<Complex64> {
    (0..len).map(|_| rand_complex_in_disk(rng, rmax)).collect()
}

/// Mixed prefixes for the interpolation cross-check: small (solvable with
/// slack), large (unsolvable), and terminated boundary cases.
pub fn rand_prefix_mixed(rng: &mut ChaCha8Rng, trial: u64, max_m: usize) -> Vec<Complex64> {
    let m = rng.gen_range(0..=max_m);
    match trial % 3 {
        0 => (0..=m).map(|_| rand_complex(rng, 0.35)).collect(),
        1 => {
            let mut v: Vec<Complex64> = (0..=m).map(|_| rand_complex(rng, 1.2)).collect();
            // Push the first coefficient outward so the form is indefinite.
            let n0 = v[0].norm();
            if n0 < 1.0 {
                v[0] *= Complex64::new(1.6 / n0.max(0.3), 0.0);
            }
            v
        }
        _ => {
            // Terminated: unimodular last parameter, expanded back to Taylor.
            let k = rng.gen_range(0..=m);
            let mut gammas = rand_contractive(rng, k, 0.7);
            gammas.push(Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)));
            let p = crate::schur::SchurParams { gammas, terminated: true };
            crate::schur::approximant(&p).taylor(m + 1)
        }
    }
}

pub fn rand_measure(rng: &mut ChaCha8Rng, min_atoms: usize, max_atoms: usize) -> DiscreteMeasure {
    loop {
        let n = rng.gen_range(min_atoms..=max_atoms);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let separated = angles.windows(2).all(|w| w[1] - w[0] > 0.05)
            && (angles[0] + std::f64::consts::TAU - angles[n - 1]) > 0.05;
        if !separated {
            continue;
        }
        let mut ws: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = ws.iter().sum();
        for w in ws.iter_mut() {
            *w /= total;
        }
        // Exact unit-sum within validation tolerance.
        let drift: f64 = 1.0 - ws.iter().sum::<f64>();
        ws[0] += drift;
        let atoms = angles
            .iter()
            .zip(&ws)
            .map(|(&a, &w)| (Complex64::from_polar(1.0, a), w))
            .collect();
        if let Ok(m) = DiscreteMeasure::new(atoms) {
            return m;
        }
    }
}

/// Random rational polynomial of degree <= max_deg built from linear and
/// quadratic factors, some repeated, with nonzero roots.
pub fn rand_rational_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> RealPoly {
    let mut p = RealPoly::constant(ratio(rng.gen_range(1..=3), 1));
    let mut deg = 0usize;
    while deg < max_deg {
        if rng.gen_bool(0.65) || max_deg - deg < 2 {
            let root = nonzero_rational(rng);
            let factor = RealPoly::new(vec![-root, BigRational::one()]);
            let mult = if rng.gen_bool(0.3) { 2.min(max_deg - deg) } else { 1 };
            for _ in 0..mult {
                p = p.mul(&factor);
            }
            deg += mult;
        } else {
            // Irreducible quadratic t^2 + b t + c with b^2 < 4c.
            let b = ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            let c = &b * &b / rat(4) + ratio(rng.gen_range(1..=6), rng.gen_range(1..=3));
            p = p.mul(&RealPoly::new(vec![c, b, BigRational::one()]));
            deg += 2;
        }
        if rng.gen_bool(0.25) {
            break;
        }
    }
    p
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num = loop {
        let n = rng.gen_range(-10..=10i64);
        if n != 0 {
            break n;
        }
    };
    ratio(num, rng.gen_range(1..=4))
}

/// Real-rooted polynomial from nonzero rational roots in [-10, 10];
/// `negative_only` keeps every root strictly negative.
pub fn rand_real_rooted(rng: &mut ChaCha8Rng, max_deg: usize, negative_only: bool) -> RealPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut p = RealPoly::constant(rat(rng.gen_range(1..=2)));
    for _ in 0..deg {
        let mut root = nonzero_rational(rng);
        if negative_only && root > BigRational::from_integer(0.into()) {
            root = -root;
        }
        p = p.mul(&RealPoly::new(vec![-root, BigRational::one()]));
    }
    p
}

/// First-type multipliers from e^{alpha t} prod (1 + delta_k t) with
/// nonnegative rational alpha, delta.
pub fn rand_first_type_multipliers(rng: &mut ChaCha8Rng, len: usize) -> MultiplierSeq {
    let alpha = ratio(rng.gen_range(0..=4), rng.gen_range(1..=3));
    let k = rng.gen_range(0..=3);
    let deltas: Vec<BigRational> = (0..k).map(|_| ratio(rng.gen_range(0..=5), rng.gen_range(1..=3))).collect();
    MultiplierSeq::from_first_type(&alpha, &deltas, len)
}

/// Totally nonnegative matrix as a product of nonnegative bidiagonal
/// factors, returned both exactly and as floats.
pub fn rand_totally_positive(rng: &mut ChaCha8Rng, max_n: usize) -> (Vec<Vec<BigRational>>, Vec<Vec<f64>>) {
    let n = rng.gen_range(2..=max_n);
    let zero = || BigRational::from_integer(0.into());
    let mut acc: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { zero() }).collect())
        .collect();
    let factors = rng.gen_range(1..=4);
    for f in 0..factors {
        let lower = f % 2 == 0;
        let mut b: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ratio(rng.gen_range(1..=3), 1) } else { zero() }).collect())
            .collect();
        for i in 1..n {
            let v = ratio(rng.gen_range(0..=2), 1);
            if lower {
                b[i][i - 1] = v;
            } else {
                b[i - 1][i] = v;
            }
        }
        let mut next = vec![vec![zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if acc[i][k] == zero() {
                    continue;
                }
                for j in 0..n {
                    let add = &acc[i][k] * &b[k][j];
                    next[i][j] += add;
                }
            }
        }
        acc = next;
    }
    let float = acc
        .iter()
        .map(|row| row.iter().map(crate::exact::rat_to_f64).collect())
        .collect();
    (acc, float)
}

/// Taylor coefficients to `deg` of e^{gamma z} prod(1 + a_k z)/prod(1 - b_k z)
/// with nonnegative rational parameters: a totally positive sequence.
pub fn rand_tp_series(rng: &mut ChaCha8Rng, deg: usize) -> Vec<BigRational> {
    let len = deg + 1;
    let gamma = ratio(rng.gen_range(0..=3), rng.gen_range(1..=3));
    let mut series = vec![BigRational::from_integer(0.into()); len];
    let mut term = BigRational::one();
    for (k, s) in series.iter_mut().enumerate() {
        if k > 0 {
            term = &term * &gamma / rat(k as i64);
        }
        *s = term.clone();
    }
    for _ in 0..rng.gen_range(0..=2) {
        let a = ratio(rng.gen_range(0..=4), rng.gen_range(1..=3));
        for k in (1..len).rev() {
            let lower = series[k - 1].clone();
            series[k] = &series[k] + lower * &a;
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        // Multiply by 1/(1 - b z) = sum b^j z^j, i.e. a running convolution.
        let b = ratio(rng.gen_range(0..=2), rng.gen_range(2..=4));
        for k in 1..len {
            let prev = series[k - 1].clone();
            series[k] = &series[k] + prev * &b;
        }
    }
    series
}

/// Small Laurent operator for ring-axiom trials: top degree <= 2, floor -2,
/// a few low-order monomial coefficients.
pub fn rand_laurent(rng: &mut ChaCha8Rng) -> LaurentOp {
    let mut op = LaurentOp::zero(-2);
    for k in -2..=2i64 {
        if rng.gen_bool(0.5) {
            op = op.add(&LaurentOp::from_term(k, rand_diffpoly(rng)));
        }
    }
    if op.is_zero() {
        op = op.add(&LaurentOp::d_pow(1));
    }
    op
}

pub fn rand_diffpoly(rng: &mut ChaCha8Rng) -> DiffPoly {
    let mut p = DiffPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut mono = DiffPoly::constant(ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4)));
        for _ in 0..rng.gen_range(0..=2) {
            mono = mono.mul(&DiffPoly::u(rng.gen_range(0..=2)));
        }
        p = p.add(&mono);
    }
    if p.is_zero() {
        DiffPoly::one()
    } else {
        p
    }
}

/// One or two monomials, degree at most one, indices u0/u1: light enough
/// for deep root solves.
pub fn rand_diffpoly_small(rng: &mut ChaCha8Rng) -> DiffPoly {
    let mut p = DiffPoly::constant(ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
    if rng.gen_bool(0.7) {
        let c = ratio(rng.gen_range(-2..=2), 1);
        p = p.add(&DiffPoly::u(rng.gen_range(0..=1)).scale(&c));
    }
    p
}

pub fn rand_constant_laurent(rng: &mut ChaCha8Rng) -> LaurentOp {
    let mut op = LaurentOp::zero(-3);
    for k in -3..=2i64 {
        if rng.gen_bool(0.6) {
            op = op.add(&LaurentOp::from_term(
                k,
                DiffPoly::constant(ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))),
            ));
        }
    }
    op
}

/// Elementary symmetric polynomial c_k.
pub fn elementary_symmetric(x: &[f64], k: usize) -> f64 {
    let n = x.len();
    if k == 0 {
        return 1.0;
    }
    if k > n {
        return 0.0;
    }
    // dp[j] accumulates c_j over a left-to-right scan.
    let mut dp = vec![0.0; k + 1];
    dp[0] = 1.0;
    for &v in x {
        for j in (1..=k).rev() {
            dp[j] += dp[j - 1] * v;
        }
    }
    dp[k]
}

/// The convergent test battery: (sequence generator, limit).
pub fn convergent_battery() -> Vec<(Box<dyn Fn(usize) -> Complex64 + Send + Sync>, f64)> {
    vec![
        (Box::new(|_k| Complex64::new(1.0, 0.0)), 1.0),
        (Box::new(|k| Complex64::new(1.0 / k as f64, 0.0)), 0.0),
        (
            Box::new(|k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 } / k as f64, 0.0)),
            0.0,
        ),
        (Box::new(|k| Complex64::new(k as f64 / (k + 1) as f64, 0.0)), 1.0),
    ]
}

/// Aitken extrapolation of the last three complex values, with the same
/// weak-contraction fallbacks as the summability estimator.
pub fn aitken_c(vals: &[Complex64]) -> Complex64 {
    let n = vals.len();
    if n < 3 {
        return vals[n - 1];
    }
    let (a1, a2, a3) = (vals[n - 3], vals[n - 2], vals[n - 1]);
    let d1 = a2 - a1;
    let d2 = a3 - a2;
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
